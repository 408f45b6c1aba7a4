#include "pbenc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <unordered_map>

#include "pbenc/normalizer.hpp"

namespace pbenc {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / range) * range;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

PBConstraint renumber_dense(const PBConstraint& c, Var* num_vars) {
    PBConstraint out = c;
    std::unordered_map<Var, Var> dense;
    for (Term& t : out.terms) {
        auto [it, inserted] = dense.try_emplace(t.literal.var(), static_cast<Var>(dense.size() + 1));
        t.literal = t.literal.is_negative() ? Literal::negative(it->second) : Literal::positive(it->second);
    }
    if (num_vars) *num_vars = static_cast<Var>(dense.size());
    return out;
}

PBConstraint random_normalized(Rng& rng, std::size_t max_n, Weight max_w, Weight max_k, bool cardinality) {
    if (max_n < 2 || max_w < 1 || max_k < 1) throw std::invalid_argument("random_normalized: bounds too small");
    for (;;) {
        auto n = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(max_n)));
        Weight k = rng.uniform(1, max_k);
        PBConstraint c;
        c.bound = k;
        Weight total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Weight w = cardinality ? 1 : rng.uniform(1, std::min(max_w, k));
            total += w;
            c.terms.push_back({w, Literal::positive(static_cast<Var>(i + 1))});
        }
        if (total > k) return c;
    }
}

PBConstraint random_raw(Rng& rng, std::size_t max_vars, Weight max_abs_w, Weight max_abs_bound) {
    PBConstraint c;
    auto vars = rng.uniform(1, static_cast<std::int64_t>(max_vars));
    auto n = rng.uniform(1, vars + 2);
    for (std::int64_t i = 0; i < n; ++i) {
        auto v = static_cast<Var>(rng.uniform(1, vars));
        Literal l = rng.chance(500) ? Literal::negative(v) : Literal::positive(v);
        c.terms.push_back({rng.uniform(-max_abs_w, max_abs_w), l});
    }
    switch (rng.uniform(0, 2)) {
        case 0: c.relation = Relation::LessEq; break;
        case 1: c.relation = Relation::GreaterEq; break;
        default: c.relation = Relation::Equal; break;
    }
    c.bound = rng.uniform(-max_abs_bound, max_abs_bound);
    return c;
}

OracleVerdict oracle_check_formula(const PBConstraint& c, const CnfFormula& f, Var num_inputs) {
    if (num_inputs > kMaxOracleVars) throw std::invalid_argument("instance too large for enumeration");
    CnfFormula g = f;
    g.reserve_vars(num_inputs);
    for (const Term& t : c.terms) g.reserve_vars(t.literal.var());
    Solver solver(g);

    OracleVerdict verdict;
    std::vector<bool> values(static_cast<std::size_t>(g.num_vars()) + 1, false);
    std::vector<Literal> assumptions(num_inputs);
    const std::uint64_t total = std::uint64_t{1} << num_inputs;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (Var v = 1; v <= num_inputs; ++v) {
            bool bit = ((mask >> (v - 1)) & 1u) != 0;
            values[v] = bit;
            assumptions[v - 1] = bit ? Literal::positive(v) : Literal::negative(v);
        }
        const bool holds = evaluate(c, values);
        const SolveResult r = solver.solve(assumptions);
        ++verdict.assignments_checked;
        if ((r.status == SolveStatus::Sat) != holds) {
            verdict.equisatisfiable = false;
            verdict.counterexample = std::vector<bool>(values.begin(), values.begin() + num_inputs + 1);
            verdict.constraint_holds = holds;
            return verdict;
        }
    }
    return verdict;
}

OracleVerdict oracle_check(const PBConstraint& c, Encoding e) {
    Var m = 0;
    PBConstraint dense = renumber_dense(c, &m);
    if (m > kMaxOracleVars) throw std::invalid_argument("instance too large for enumeration");
    CnfFormula f(m);
    VarPool pool(m + 1);
    encode_any(dense, e, pool, f);
    return oracle_check_formula(dense, f, m);
}

namespace {

struct GacSetup {
    PBConstraint constraint;
    CnfFormula formula;
};

GacSetup prepare_gac(const PBConstraint& c, Encoding e) {
    PBConstraint normal = c;
    if (!is_normal_form(normal)) {
        NormalizationOutcome o = normalize(c);
        if (o.kind != NormalizationOutcome::Kind::Normalized || !o.forced_units.empty()) {
            throw std::invalid_argument("gac_check needs a constraint that normalizes without side units");
        }
        normal = o.constraint;
    }
    Var m = 0;
    GacSetup s;
    s.constraint = renumber_dense(normal, &m);
    if (m > kMaxGacVars) throw std::invalid_argument("instance too large for GAC checking");
    s.formula = CnfFormula(m);
    VarPool pool(m + 1);
    encode_normalized(s.constraint, e, pool, s.formula);
    return s;
}

GacReport check_one(const PBConstraint& c, Solver& solver, std::span<const std::optional<bool>> partial) {
    GacReport rep;
    rep.instance = c;
    Weight true_sum = 0;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        if (!partial[i]) continue;
        Literal l = c.terms[i].literal;
        rep.partial.push_back(*partial[i] ? l : ~l);
        if (*partial[i]) true_sum += c.terms[i].weight;
    }
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        if (!partial[i] && c.terms[i].weight + true_sum > c.bound) rep.required.push_back(~c.terms[i].literal);
    }
    PropagationResult pr = solver.probe(rep.partial);
    rep.conflict = pr.conflict();
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        if (!partial[i] && pr.implies(~c.terms[i].literal)) rep.propagated.push_back(~c.terms[i].literal);
    }
    for (Literal r : rep.required) {
        if (std::find(rep.propagated.begin(), rep.propagated.end(), r) == rep.propagated.end()) rep.missing.push_back(r);
    }
    rep.pass = !rep.conflict && rep.missing.empty();
    return rep;
}

}  // namespace

GacReport gac_check_partial(const PBConstraint& c, Encoding e, std::span<const std::optional<bool>> partial) {
    GacSetup s = prepare_gac(c, e);
    if (partial.size() != s.constraint.terms.size()) throw std::invalid_argument("partial assignment size mismatch");
    Solver solver(s.formula);
    return check_one(s.constraint, solver, partial);
}

std::vector<GacReport> gac_check(const PBConstraint& c, Encoding e, std::size_t trials, std::uint64_t seed) {
    GacSetup s = prepare_gac(c, e);
    const PBConstraint& nc = s.constraint;
    const std::size_t n = nc.terms.size();
    Solver solver(s.formula);
    std::vector<GacReport> reports;
    std::vector<std::optional<bool>> partial(n);

    auto consistent = [&] {
        Weight sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (partial[i] && *partial[i]) sum += nc.terms[i].weight;
        }
        return sum <= nc.bound;
    };

    std::uint64_t cases = 1;
    for (std::size_t i = 0; i < n && cases <= 4096; ++i) cases *= 3;
    if (cases <= 4096) {
        for (std::uint64_t code = 0; code < cases; ++code) {
            std::uint64_t x = code;
            for (std::size_t i = 0; i < n; ++i, x /= 3) {
                switch (x % 3) {
                    case 0: partial[i].reset(); break;
                    case 1: partial[i] = true; break;
                    default: partial[i] = false; break;
                }
            }
            if (consistent()) reports.push_back(check_one(nc, solver, partial));
        }
        return reports;
    }

    Rng rng(seed);
    while (reports.size() < trials) {
        for (std::size_t i = 0; i < n; ++i) {
            switch (rng.uniform(0, 2)) {
                case 0: partial[i].reset(); break;
                case 1: partial[i] = true; break;
                default: partial[i] = false; break;
            }
        }
        if (consistent()) reports.push_back(check_one(nc, solver, partial));
    }
    return reports;
}

std::size_t eq4_count(std::span<const Weight> weights, Weight k) {
    if (weights.size() > 20) throw std::invalid_argument("eq4_count enumerates at most 20 weights");
    std::set<Weight> sums;
    const std::uint64_t total = std::uint64_t{1} << weights.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        Weight s = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if ((mask >> i) & 1u) s = checked_add(s, weights[i]);
        }
        sums.insert(std::min(s, k + 1));
    }
    return sums.size();
}

std::string_view family_name(BenchFamily f) {
    return f == BenchFamily::Pb12Like ? "pb12like" : "pedigreelike";
}

BenchFamily parse_family(std::string_view name) {
    if (name == "pb12like") return BenchFamily::Pb12Like;
    if (name == "pedigreelike") return BenchFamily::PedigreeLike;
    throw std::invalid_argument("unknown benchmark family '" + std::string(name) + "'");
}

namespace {

// One constraint, two weights {1, max_weight}; about 95% of the literals
// carry the large weight.
PbInstance gen_pedigree(const BenchSpec& spec, Rng& rng) {
    if (spec.num_literals < 2) throw std::invalid_argument("pedigreelike needs at least 2 literals");
    if (spec.max_weight < 2) throw std::invalid_argument("pedigreelike needs a large weight of at least 2");
    PBConstraint c;
    for (std::size_t i = 0; i < spec.num_literals; ++i) {
        Weight w = rng.chance(950) ? spec.max_weight : 1;
        c.terms.push_back({w, Literal::positive(static_cast<Var>(i + 1))});
    }
    auto has = [&](Weight w) {
        return std::any_of(c.terms.begin(), c.terms.end(), [&](const Term& t) { return t.weight == w; });
    };
    if (!has(1)) c.terms[0].weight = 1;
    if (!has(spec.max_weight)) c.terms[0].weight = spec.max_weight;
    Weight total = weight_sum(c);
    c.bound = static_cast<Weight>(std::floor(static_cast<double>(total) * spec.bound_fraction));
    PbInstance inst;
    inst.declared_vars = static_cast<Var>(spec.num_literals);
    inst.constraints.push_back(std::move(c));
    inst.declared_constraints = 1;
    return inst;
}

// Per constraint: 8..56 literals, 1..12 distinct weights, largest weight up
// to 23, k between 5% and 30% of the weight total. Half of the constraints
// are written in the equivalent >= form.
PbInstance gen_pb12(const BenchSpec& spec, Rng& rng) {
    const std::size_t num_vars = spec.num_vars ? spec.num_vars : 64;
    PbInstance inst;
    inst.declared_vars = static_cast<Var>(num_vars);
    std::vector<Var> pool(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) pool[i] = static_cast<Var>(i + 1);

    for (std::size_t ci = 0; ci < spec.num_constraints; ++ci) {
        auto n = static_cast<std::size_t>(rng.uniform(8, 56));
        n = std::min(n, num_vars);
        auto distinct = rng.uniform(1, 12);
        Weight max_w = rng.uniform(std::max<std::int64_t>(distinct, 2), 23);
        std::vector<Weight> palette{max_w};
        while (static_cast<std::int64_t>(palette.size()) < distinct) {
            Weight w = rng.uniform(1, max_w - 1);
            if (std::find(palette.begin(), palette.end(), w) == palette.end()) palette.push_back(w);
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(num_vars) - 1));
            std::swap(pool[i], pool[j]);
        }
        PBConstraint c;
        for (std::size_t i = 0; i < n; ++i) {
            Weight w = i < palette.size() ? palette[i]
                                          : palette[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(palette.size()) - 1))];
            Literal l = rng.chance(500) ? Literal::negative(pool[i]) : Literal::positive(pool[i]);
            c.terms.push_back({w, l});
        }
        Weight total = weight_sum(c);
        Weight k = std::max<Weight>(1, total * rng.uniform(5, 30) / 100);
        c.bound = k;
        if (rng.chance(500)) {
            for (Term& t : c.terms) t.literal = ~t.literal;
            c.relation = Relation::GreaterEq;
            c.bound = total - k;
        }
        inst.constraints.push_back(std::move(c));
    }
    inst.declared_constraints = inst.constraints.size();
    return inst;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

}  // namespace

PbInstance gen_bench(const BenchSpec& spec) {
    Rng rng(spec.seed);
    return spec.family == BenchFamily::PedigreeLike ? gen_pedigree(spec, rng) : gen_pb12(spec, rng);
}

std::vector<StatsRow> stats_compare(const std::string& name, const PbInstance& inst, std::span<const Encoding> encoders,
                                    const StatsOptions& opts) {
    std::vector<StatsRow> rows;
    for (Encoding e : encoders) {
        StatsRow row;
        row.instance = name;
        row.encoder = std::string(encoding_name(e));
        try {
            InstanceEncoding enc = encode_instance(inst, e);
            row.aux_vars = enc.stats.aux_vars;
            row.aux_clauses = enc.stats.aux_clauses;
            row.encode_ms = enc.stats.wall_time_ms;
            if (opts.solve) {
                auto start = std::chrono::steady_clock::now();
                SolveResult r = solve(enc.formula, {}, opts.limits);
                row.solve_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                row.result = std::string(status_name(r.status));
            } else {
                row.result = "SKIPPED";
            }
        } catch (const std::exception& ex) {
            row.result = std::string("ERROR: ") + ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_stats_csv(std::span<const StatsRow> rows, std::ostream& out, bool header) {
    if (header) out << kStatsHeader << '\n';
    char buf[64];
    for (const StatsRow& r : rows) {
        out << csv_field(r.instance) << ',' << csv_field(r.encoder) << ',' << r.aux_vars << ',' << r.aux_clauses << ',';
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", r.encode_ms, r.solve_ms);
        out << buf << ',' << csv_field(r.result) << '\n';
    }
}

}  // namespace pbenc
