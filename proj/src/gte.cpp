#include "pbenc/gte.hpp"

#include <algorithm>
#include <chrono>

namespace pbenc {

std::optional<Literal> GteNode::var_of(Weight sum) const {
    auto it = std::lower_bound(sums.begin(), sums.end(), sum);
    if (it == sums.end() || *it != sum || vars.empty()) return std::nullopt;
    return vars[static_cast<std::size_t>(it - sums.begin())];
}

std::vector<Weight> merge_sums(std::span<const Weight> left, std::span<const Weight> right, Weight k) {
    const Weight cap = checked_add(k, 1);
    std::vector<Weight> out;
    out.reserve(left.size() + right.size() + left.size() * right.size());
    for (Weight s : left) out.push_back(std::min(s, cap));
    for (Weight s : right) out.push_back(std::min(s, cap));
    for (Weight q : left) {
        for (Weight r : right) out.push_back(std::min(checked_add(q, r), cap));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::size_t build_span(GteTree& tree, std::span<const Term> terms, std::size_t lo, std::size_t hi) {
    const Weight cap = checked_add(tree.k, 1);
    if (hi - lo == 1) {
        GteNode leaf;
        leaf.sums = {std::min(terms[lo].weight, cap)};
        leaf.vars = {terms[lo].literal};
        leaf.node_sum = terms[lo].weight;
        leaf.term = lo;
        tree.nodes.push_back(std::move(leaf));
        tree.leaves.push_back(tree.nodes.size() - 1);
        return tree.nodes.size() - 1;
    }
    std::size_t mid = lo + (hi - lo + 1) / 2;
    std::size_t l = build_span(tree, terms, lo, mid);
    std::size_t r = build_span(tree, terms, mid, hi);
    GteNode node;
    node.sums = merge_sums(tree.nodes[l].sums, tree.nodes[r].sums, tree.k);
    node.node_sum = checked_add(tree.nodes[l].node_sum, tree.nodes[r].node_sum);
    node.left = l;
    node.right = r;
    tree.nodes.push_back(std::move(node));
    return tree.nodes.size() - 1;
}

}  // namespace

GteTree build_tree(const PBConstraint& c) {
    if (c.terms.empty()) throw std::invalid_argument("cannot build a totalizer tree without terms");
    if (c.bound < 0) throw std::invalid_argument("totalizer bound must be non-negative");
    for (const Term& t : c.terms) {
        if (t.weight < 1) throw std::invalid_argument("totalizer weights must be positive");
    }
    GteTree tree;
    tree.k = c.bound;
    tree.nodes.reserve(2 * c.terms.size() - 1);
    build_span(tree, c.terms, 0, c.terms.size());
    return tree;
}

std::vector<Weight> node_sums(std::span<const Weight> weights, Weight k) {
    if (weights.empty()) return {};
    PBConstraint c;
    c.bound = k;
    c.terms.reserve(weights.size());
    Var v = 1;
    for (Weight w : weights) c.terms.push_back({w, Literal::positive(v++)});
    return build_tree(c).root().sums;
}

GteEncoding encode_gte(const PBConstraint& c, VarPool& pool, CnfFormula& out) {
    if (!is_normal_form(c)) throw std::invalid_argument("encode_gte expects a normal-form constraint");
    auto start = std::chrono::steady_clock::now();
    const Var first_aux = pool.next_free();
    const std::size_t first_clause = out.num_clauses();

    GteEncoding enc;
    if (c.terms.empty() || weight_sum(c) <= c.bound) {
        enc.stats.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return enc;
    }

    enc.tree = build_tree(c);
    GteTree& tree = enc.tree;
    const Weight cap = c.bound + 1;

    for (GteNode& node : tree.nodes) {
        if (node.is_leaf()) continue;
        node.vars.reserve(node.sums.size());
        for (std::size_t i = 0; i < node.sums.size(); ++i) node.vars.push_back(Literal::positive(pool.fresh_var()));

        const GteNode& q = tree.nodes[*node.left];
        const GteNode& r = tree.nodes[*node.right];
        for (std::size_t i = 0; i < q.sums.size(); ++i) {
            for (std::size_t j = 0; j < r.sums.size(); ++j) {
                Weight s = std::min(q.sums[i] + r.sums[j], cap);
                out.add_clause({~q.vars[i], ~r.vars[j], *node.var_of(s)});
            }
        }
        for (const GteNode* child : {&q, &r}) {
            for (std::size_t i = 0; i < child->sums.size(); ++i) {
                out.add_clause({~child->vars[i], *node.var_of(child->sums[i])});
            }
        }
    }

    const GteNode& root = tree.root();
    if (auto top = root.var_of(cap)) out.add_unit(~*top);

    out.reserve_vars(pool.top());
    enc.stats.aux_vars = pool.next_free() - first_aux;
    enc.stats.aux_clauses = out.num_clauses() - first_clause;
    enc.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return enc;
}

}  // namespace pbenc
