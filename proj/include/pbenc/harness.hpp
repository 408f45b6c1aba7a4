#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pbenc/core.hpp"
#include "pbenc/encoding.hpp"
#include "pbenc/opb_io.hpp"
#include "pbenc/sat.hpp"

namespace pbenc {

/// Reproducible generator: std::mt19937_64 seeded with the 64-bit seed; ranges
/// are drawn by rejection sampling on raw 64-bit outputs so the streams do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// True with probability per_mille / 1000.
    bool chance(std::uint32_t per_mille) { return uniform(0, 999) < per_mille; }

private:
    std::mt19937_64 engine_;
};

/// Renumbers the constraint's variables densely 1..m in order of first
/// appearance.
PBConstraint renumber_dense(const PBConstraint& c, Var* num_vars = nullptr);

/// Normal-form constraint with distinct positive literals x1..xn, n in
/// [2, max_n], weights in [1, min(max_w, k)] (all 1 when `cardinality`), and
/// total weight above k.
PBConstraint random_normalized(Rng& rng, std::size_t max_n, Weight max_w, Weight max_k, bool cardinality = false);

/// Arbitrary constraint over at most `max_vars` variables: any relation,
/// weights in [-max_abs_w, max_abs_w], repeated variables allowed.
PBConstraint random_raw(Rng& rng, std::size_t max_vars, Weight max_abs_w, Weight max_abs_bound);

struct OracleVerdict {
    bool equisatisfiable = true;
    /// First full input assignment on which the CNF and the constraint
    /// disagree (index = variable of the checked constraint).
    std::optional<std::vector<bool>> counterexample;
    bool constraint_holds = false;
    std::uint64_t assignments_checked = 0;
};

inline constexpr std::size_t kMaxOracleVars = 16;
inline constexpr std::size_t kMaxGacVars = 12;

/// Checks `f` against `c` over every assignment of variables 1..num_inputs:
/// the CNF restricted to the assignment must be satisfiable exactly when the
/// assignment satisfies `c`.
OracleVerdict oracle_check_formula(const PBConstraint& c, const CnfFormula& f, Var num_inputs);

/// Normalizes and encodes `c` with `e` (after dense renumbering) and runs
/// oracle_check_formula. Throws std::invalid_argument above kMaxOracleVars.
OracleVerdict oracle_check(const PBConstraint& c, Encoding e);

struct GacReport {
    PBConstraint instance;
    /// Asserted input literals (an input literal or its negation per term).
    std::vector<Literal> partial;
    /// Falsifications demanded by the constraint's semantics alone.
    std::vector<Literal> required;
    /// Input-literal falsifications unit propagation derived.
    std::vector<Literal> propagated;
    bool conflict = false;
    bool pass = true;
    /// Required literals that propagation missed.
    std::vector<Literal> missing;
};

/// Generalized arc-consistency check of encoding `e` on a normal-form `c`.
/// Every consistent partial assignment is tried when 3^n <= 4096, otherwise
/// `trials` consistent ones are sampled.
std::vector<GacReport> gac_check(const PBConstraint& c, Encoding e, std::size_t trials, std::uint64_t seed);

/// Same, for one given partial assignment (term index -> true/false/unset).
GacReport gac_check_partial(const PBConstraint& c, Encoding e, std::span<const std::optional<bool>> partial);

/// Number of distinct non-empty subset sums of `weights` clamped at k+1, by
/// brute-force enumeration. Limited to 20 weights.
std::size_t eq4_count(std::span<const Weight> weights, Weight k);

enum class BenchFamily { Pb12Like, PedigreeLike };

std::string_view family_name(BenchFamily f);
BenchFamily parse_family(std::string_view name);

struct BenchSpec {
    BenchFamily family = BenchFamily::Pb12Like;
    /// pedigreelike: number of literals of the single constraint.
    std::size_t num_literals = 50;
    /// pb12like: number of constraints.
    std::size_t num_constraints = 10;
    /// pb12like: size of the variable pool (0 picks 64).
    std::size_t num_vars = 0;
    /// pedigreelike: the large weight; the small one is 1.
    Weight max_weight = 456;
    /// pedigreelike: k = floor(total weight * fraction).
    double bound_fraction = 0.5;
    std::uint64_t seed = 1;
};

PbInstance gen_bench(const BenchSpec& spec);

struct StatsRow {
    std::string instance;
    std::string encoder;
    std::uint64_t aux_vars = 0;
    std::uint64_t aux_clauses = 0;
    double encode_ms = 0;
    double solve_ms = 0;
    std::string result;
};

struct StatsOptions {
    bool solve = true;
    SolveLimits limits;
};

/// One row per encoder; an encoder that throws yields an ERROR row instead
/// of aborting the others.
std::vector<StatsRow> stats_compare(const std::string& name, const PbInstance& inst, std::span<const Encoding> encoders,
                                    const StatsOptions& opts = {});

inline constexpr std::string_view kStatsHeader = "instance,encoder,aux_vars,aux_clauses,encode_ms,solve_ms,result";

void write_stats_csv(std::span<const StatsRow> rows, std::ostream& out, bool header = true);

}  // namespace pbenc
