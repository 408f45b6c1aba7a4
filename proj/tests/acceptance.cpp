// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pbenc/baselines.hpp"
#include "pbenc/gte.hpp"
#include "pbenc/harness.hpp"

using namespace pbenc;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Literal x(Var v) { return Literal::positive(v); }

PBConstraint constraint_of(const std::vector<Weight>& w, Weight k) {
    PBConstraint c;
    c.bound = k;
    for (std::size_t i = 0; i < w.size(); ++i) c.terms.push_back({w[i], x(static_cast<Var>(i + 1))});
    return c;
}

std::string join(const std::vector<Weight>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

// Leaf weights below a node, in tree order.
void collect_weights(const GteTree& t, const PBConstraint& c, std::size_t node, std::vector<Weight>& out) {
    const GteNode& n = t.nodes[node];
    if (n.is_leaf()) {
        out.push_back(c.terms[*n.term].weight);
        return;
    }
    collect_weights(t, c, *n.left, out);
    collect_weights(t, c, *n.right, out);
}

// ---------------------------------------------------------------------------

Check tree_sums() {
    Check ck;
    PBConstraint c = constraint_of({2, 3, 3, 3}, 5);
    VarPool pool(5);
    CnfFormula f(4);
    GteEncoding enc = encode_gte(c, pool, f);
    const GteNode& o = enc.tree.root();
    const GteNode& a = enc.tree.nodes[*o.left];
    const GteNode& b = enc.tree.nodes[*o.right];
    ck.require(a.sums == std::vector<Weight>{2, 3, 5}, "A sums " + join(a.sums));
    ck.require(b.sums == std::vector<Weight>{3, 6}, "B sums " + join(b.sums));
    ck.require(o.sums == std::vector<Weight>{2, 3, 5, 6}, "O sums " + join(o.sums));
    ck.require(enc.stats.aux_vars == 9, "aux vars " + std::to_string(enc.stats.aux_vars));
    ck.require(o.var_of(6) && f.clauses().back() == Clause{~*o.var_of(6)}, "root unit clause on o_6 missing");
    if (ck.ok) ck.detail = "A{2,3,5} B{3,6} O{2,3,5,6}, unit ~o6, 9 aux vars";
    return ck;
}

Check subset_sum_counts() {
    Check ck;
    Rng rng(2);
    std::size_t nodes = 0;
    for (int trial = 0; trial < 500 && ck.ok; ++trial) {
        PBConstraint c;
        for (;;) {
            Weight k = rng.uniform(1, 200);
            auto n = static_cast<std::size_t>(rng.uniform(1, 12));
            std::vector<Weight> w(n);
            for (auto& v : w) v = rng.uniform(1, std::min<Weight>(50, k + 1));
            c = constraint_of(w, k);
            if (weight_sum(c) > k) break;
        }
        VarPool pool(static_cast<Var>(c.terms.size() + 1));
        CnfFormula f;
        GteEncoding enc = encode_gte(c, pool, f);
        std::uint64_t expected_total = 0;
        for (std::size_t i = 0; i < enc.tree.nodes.size(); ++i) {
            const GteNode& node = enc.tree.nodes[i];
            if (node.is_leaf()) continue;
            std::vector<Weight> under;
            collect_weights(enc.tree, c, i, under);
            const std::size_t expected = eq4_count(under, c.bound);
            expected_total += expected;
            ++nodes;
            ck.require(node.vars.size() == expected, "node over " + join(under) + " k=" + std::to_string(c.bound) +
                                                         ": " + std::to_string(node.vars.size()) + " vars, expected " +
                                                         std::to_string(expected));
        }
        ck.require(enc.stats.aux_vars == expected_total, "aux var total mismatch on " + to_string(c));
    }
    if (ck.ok) ck.detail = "500 multisets, " + std::to_string(nodes) + " internal nodes, 0 mismatches";
    return ck;
}

Check equisatisfiability() {
    Check ck;
    Rng rng(3);
    std::size_t checks = 0, cardinality = 0;
    for (int trial = 0; trial < 1000 && ck.ok; ++trial) {
        const bool card = rng.chance(200);
        PBConstraint c = random_normalized(rng, 8, 10, 30, card);
        std::vector<Encoding> encs{Encoding::Gte, Encoding::Swc, Encoding::Adder};
        if (is_cardinality(c)) {
            encs.push_back(Encoding::Totalizer);
            ++cardinality;
        }
        for (Encoding e : encs) {
            OracleVerdict v = oracle_check(c, e);
            ++checks;
            ck.require(v.equisatisfiable, std::string(encoding_name(e)) + " counterexample on " + to_string(c));
        }
    }
    if (ck.ok) {
        ck.detail = "1000 constraints (" + std::to_string(cardinality) + " cardinality), " + std::to_string(checks) +
                    " oracle runs, 0 counterexamples";
    }
    return ck;
}

Check arc_consistency() {
    Check ck;
    std::size_t constraints = 0, partials = 0;
    for (std::size_t n = 1; n <= 5 && ck.ok; ++n) {
        for (Weight k = 0; k <= 10 && ck.ok; ++k) {
            const Weight wmax = std::min<Weight>(4, k + 1);
            std::vector<Weight> w(n, 1);
            for (;;) {
                PBConstraint c = constraint_of(w, k);
                if (weight_sum(c) > k) {
                    ++constraints;
                    for (Encoding e : {Encoding::Gte, Encoding::Swc}) {
                        for (const GacReport& r : gac_check(c, e, 0, 0)) {
                            ++partials;
                            ck.require(r.pass, std::string(encoding_name(e)) + " fails on " + to_string(c));
                        }
                    }
                }
                std::size_t i = 0;
                while (i < n && w[i] == wmax) w[i++] = 1;
                if (i == n) break;
                ++w[i];
            }
        }
    }
    // adder failure witness
    PBConstraint adder = constraint_of({2, 1, 1}, 2);
    std::vector<std::optional<bool>> partial{true, std::nullopt, std::nullopt};
    GacReport r = gac_check_partial(adder, Encoding::Adder, partial);
    ck.require(!r.pass && !r.missing.empty(), "adder witness " + to_string(adder) + " unexpectedly passes");
    if (ck.ok) {
        ck.detail = std::to_string(constraints) + " constraints, " + std::to_string(partials) +
                    " partial assignments pass for gte and swc; adder misses " + std::to_string(r.missing.size()) +
                    " propagations on " + to_string(adder) + " under x1";
    }
    return ck;
}

Check size_ordering() {
    Check ck;
    std::vector<double> log_n, log_gte;
    std::string detail;
    for (std::size_t n : {10, 20, 40}) {
        std::uint64_t gte_aux[2] = {0, 0}, swc_aux[2] = {0, 0};
        Weight ks[2] = {0, 0};
        for (int scale = 0; scale < 2; ++scale) {
            BenchSpec spec;
            spec.family = BenchFamily::PedigreeLike;
            spec.num_literals = n;
            spec.max_weight = scale == 0 ? 456 : 4560;
            spec.bound_fraction = 0.5;
            spec.seed = 11;
            const PbInstance inst = gen_bench(spec);
            const PBConstraint& c = inst.constraints[0];
            ks[scale] = c.bound;
            VarPool p1(static_cast<Var>(n + 1)), p2(static_cast<Var>(n + 1));
            CnfFormula f1, f2;
            gte_aux[scale] = encode_gte(c, p1, f1).stats.aux_vars;
            swc_aux[scale] = encode_swc(c, p2, f2).stats.aux_vars;
            ck.require(swc_aux[scale] == n * static_cast<std::uint64_t>(c.bound),
                       "swc aux vars " + std::to_string(swc_aux[scale]) + " != n*k at n=" + std::to_string(n));
            ck.require(gte_aux[scale] < swc_aux[scale], "gte not smaller than swc at n=" + std::to_string(n));
        }
        // Growth exponent of the GTE count when k grows by about 10x at fixed n.
        const double k_ratio = static_cast<double>(ks[1]) / static_cast<double>(ks[0]);
        const double exponent = std::log(static_cast<double>(gte_aux[1]) / static_cast<double>(gte_aux[0])) /
                                std::log(k_ratio);
        ck.require(exponent <= 0.25, "gte count grows with exponent " + std::to_string(exponent) + " in k at n=" +
                                         std::to_string(n));
        log_n.push_back(std::log(static_cast<double>(n)));
        log_gte.push_back(std::log(static_cast<double>(gte_aux[0])));
        char buf[160];
        std::snprintf(buf, sizeof buf, "%sn=%zu k=%lld gte=%llu swc=%llu (k x%.1f: gte=%llu, exp %.2f)",
                      detail.empty() ? "" : "; ", n,
                      static_cast<long long>(ks[0]), static_cast<unsigned long long>(gte_aux[0]),
                      static_cast<unsigned long long>(swc_aux[0]), k_ratio,
                      static_cast<unsigned long long>(gte_aux[1]), exponent);
        detail += buf;
    }
    // least-squares slope of log(gte) over log(n); two distinct weights bound
    // the root sums by (a+1)(b+1), so at most quadratic in n
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mx += log_n[i] / static_cast<double>(log_n.size());
        my += log_gte[i] / static_cast<double>(log_n.size());
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxy += (log_n[i] - mx) * (log_gte[i] - my);
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    const double slope = sxy / sxx;
    ck.require(slope <= 2.0, "gte count grows with slope " + std::to_string(slope) + " in n");
    char tail[64];
    std::snprintf(tail, sizeof tail, "; gte slope in n %.2f", slope);
    if (ck.ok) ck.detail = detail + tail;
    return ck;
}

Check power_of_two_blowup() {
    Check ck;
    std::vector<Weight> w;
    for (int i = 0; i <= 11; ++i) w.push_back(Weight{1} << i);
    const std::size_t big = node_sums(w, 1000000).size();
    ck.require(big == 4095, "root sums with large k: " + std::to_string(big));
    const std::size_t capped = node_sums(w, 100).size();
    ck.require(capped <= 101, "root sums with k=100: " + std::to_string(capped));

    // same through the encoder, at the largest k that keeps every sum distinct
    PBConstraint c = constraint_of(w, 4094);
    VarPool pool(13);
    CnfFormula f;
    GteEncoding enc = encode_gte(c, pool, f);
    ck.require(enc.tree.root().vars.size() == 4095, "encoded root vars " + std::to_string(enc.tree.root().vars.size()));
    if (ck.ok) {
        ck.detail = "root sums 4095 at k=10^6, " + std::to_string(capped) + " at k=100; encoder root vars 4095, " +
                    std::to_string(enc.stats.aux_clauses) + " clauses";
    }
    return ck;
}

Check unit_weight_reduction() {
    Check ck;
    Rng rng(7);
    for (int trial = 0; trial < 100 && ck.ok; ++trial) {
        PBConstraint c = random_normalized(rng, 30, 1, 20, true);
        const auto first = static_cast<Var>(c.terms.size() + 1);
        VarPool p1(first), p2(first);
        CnfFormula f1, f2;
        encode_gte(c, p1, f1);
        encode_totalizer(c, p2, f2);
        ck.require(f1 == f2, "clause lists differ on " + to_string(c));
    }
    if (ck.ok) ck.detail = "100 cardinality constraints, identical clause lists";
    return ck;
}

Check smoke_benchmark() {
    Check ck;
    StatsOptions opts;
    opts.limits.seconds = 60.0;
    const std::vector<Encoding> encs{Encoding::Gte, Encoding::Swc, Encoding::Adder, Encoding::Auto};
    std::size_t rows = 0, sat = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        BenchSpec spec;
        spec.family = i % 2 == 0 ? BenchFamily::Pb12Like : BenchFamily::PedigreeLike;
        spec.seed = 100 + i;
        const PbInstance inst = gen_bench(spec);
        const auto table =
            stats_compare(std::string(family_name(spec.family)) + "-" + std::to_string(spec.seed), inst, encs, opts);
        for (const StatsRow& r : table) {
            ++rows;
            ck.require(r.result == table.front().result, r.instance + ": encoders disagree on the verdict");
            worst = std::max(worst, r.solve_ms);
            ck.require(r.result == "SAT" || r.result == "UNSAT", r.instance + " " + r.encoder + ": " + r.result);
            ck.require(r.solve_ms < 60000.0, r.instance + " " + r.encoder + " too slow");
            if (r.result == "SAT") ++sat;
        }
    }
    if (ck.ok) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu rows solved, verdicts agree (%zu SAT), slowest solve %.1f ms", rows, sat, worst);
        ck.detail = buf;
    }
    return ck;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "tree-sums", 1.0, tree_sums},
        {2, "subset-sum-counts", 30.0, subset_sum_counts},
        {3, "equisatisfiability", 300.0, equisatisfiability},
        {4, "arc-consistency", 120.0, arc_consistency},
        {5, "size-ordering", 60.0, size_ordering},
        {6, "power-of-two-blowup", 10.0, power_of_two_blowup},
        {7, "unit-weight-reduction", 10.0, unit_weight_reduction},
        {8, "smoke-benchmark", 20 * 4 * 60.0, smoke_benchmark},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check ck;
        try {
            ck = c.run();
        } catch (const std::exception& e) {
            ck.ok = false;
            ck.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ck.ok && secs >= c.limit_s) {
            ck.ok = false;
            ck.detail = "time limit exceeded";
        }
        if (!ck.ok) ++failed;
        std::printf("criterion %d %-22s %s  %.2fs/%.0fs  %s\n", c.id, c.name, ck.ok ? "PASS" : "FAIL", secs,
                    c.limit_s, ck.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
