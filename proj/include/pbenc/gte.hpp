#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pbenc/core.hpp"

namespace pbenc {

/// One node of the generalized totalizer tree.
///
/// `sums` holds the distinct weighted sums reachable inside the subtree,
/// clamped at k+1 and strictly increasing. `vars[i]` is the literal that
/// becomes true once the subtree's weighted sum reaches `sums[i]`; for a leaf
/// that literal is the input literal itself. `node_sum` is the unclamped
/// maximum sum of the subtree.
struct GteNode {
    std::vector<Weight> sums;
    std::vector<Literal> vars;
    Weight node_sum = 0;
    std::optional<std::size_t> left;
    std::optional<std::size_t> right;
    /// Index into the constraint's terms; set for leaves only.
    std::optional<std::size_t> term;

    bool is_leaf() const { return !left.has_value(); }

    /// Variable for a sum value, if this node has one.
    std::optional<Literal> var_of(Weight sum) const;
};

/// Nodes are stored in post-order, so the root is last and children always
/// precede their parent.
struct GteTree {
    std::vector<GteNode> nodes;
    std::vector<std::size_t> leaves;
    Weight k = 0;

    const GteNode& root() const { return nodes.back(); }
    std::size_t root_index() const { return nodes.size() - 1; }
    bool empty() const { return nodes.empty(); }
};

/// Distinct clamped sums at a node whose children carry `left` and `right`.
std::vector<Weight> merge_sums(std::span<const Weight> left, std::span<const Weight> right, Weight k);

/// Balanced tree over the terms in input order; each span splits at
/// ceil(len/2). Node variables are not allocated.
GteTree build_tree(const PBConstraint& c);

/// Distinct non-empty-subset sums of `weights`, clamped at k+1, computed by
/// pairwise merging over the same balanced tree the encoder uses.
std::vector<Weight> node_sums(std::span<const Weight> weights, Weight k);

struct GteEncoding {
    GteTree tree;
    EncodingStats stats;
};

/// Emits the generalized totalizer clauses for a normal-form constraint.
/// Internal nodes are visited in post-order; at each node the combination
/// clauses (~q ∨ ~r ∨ p_min(q+r,k+1)) come first, then the boundary clauses
/// (~s ∨ p_s). The root's k+1 variable is then forbidden by a unit clause.
/// Vacuous constraints (total weight <= k) emit nothing.
GteEncoding encode_gte(const PBConstraint& c, VarPool& pool, CnfFormula& out);

}  // namespace pbenc
