#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbenc/core.hpp"

namespace pbenc {

enum class SolveStatus { Sat, Unsat, Timeout };

std::string_view status_name(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    /// model[v] for v in [1, num_vars]; index 0 unused. Empty unless Sat.
    std::vector<bool> model;

    bool value(Literal l) const { return model[l.var()] != l.is_negative(); }
};

struct SolveLimits {
    std::optional<double> seconds;
    std::optional<std::uint64_t> conflicts;
};

struct PropagationResult {
    enum class Kind { Stable, Conflict };

    Kind kind = Kind::Stable;
    /// Literals set by unit propagation (asserted literals excluded), in trail
    /// order.
    std::vector<Literal> implied;
    /// Index in the source formula of the falsified clause. Empty when the
    /// conflict is a clash between assertions, or the clause was learnt.
    std::optional<std::size_t> conflict_clause;

    bool conflict() const { return kind == Kind::Conflict; }
    bool implies(Literal l) const;
};

/// CDCL engine: two watched literals, first-UIP learning, VSIDS with ties
/// broken towards the lowest variable index, phase saving with initial
/// polarity false, Luby restarts. Deterministic for identical inputs.
///
/// One instance per thread. The instance can be solved repeatedly under
/// different assumptions; learnt clauses are kept between calls.
class Solver {
public:
    explicit Solver(const CnfFormula& f);

    SolveResult solve(std::span<const Literal> assumptions = {}, const SolveLimits& limits = {});

    /// Asserts `literals` one decision level each, runs unit propagation to a
    /// fixpoint, reports what was derived, then retracts the assertions.
    PropagationResult probe(std::span<const Literal> literals);

    Var num_vars() const { return num_vars_; }
    std::uint64_t conflicts() const { return stats_conflicts_; }
    std::uint64_t decisions() const { return stats_decisions_; }
    std::uint64_t propagations() const { return stats_propagations_; }

private:
    static constexpr std::uint32_t kNoClause = UINT32_MAX;

    struct StoredClause {
        std::vector<Literal> lits;
        std::int64_t origin = -1;
        double activity = 0.0;
        bool learnt = false;
        bool deleted = false;
    };
    struct Watcher {
        std::uint32_t cref;
        Literal blocker;
    };

    // value encoding: 0 unassigned, 1 true, -1 false
    std::int8_t value(Literal l) const {
        std::int8_t v = assigns_[l.var()];
        return l.is_negative() ? static_cast<std::int8_t>(-v) : v;
    }
    std::size_t decision_level() const { return trail_lim_.size(); }

    void add_input_clause(const Clause& clause, std::size_t origin);
    void attach(std::uint32_t cref);
    void enqueue(Literal l, std::uint32_t reason);
    std::uint32_t propagate();
    void cancel_until(std::size_t level);
    void analyze(std::uint32_t confl, std::vector<Literal>& learnt, std::size_t& backtrack_level);
    bool redundant(Literal l) const;
    std::optional<Literal> pick_branch();
    void reduce_db();
    bool locked(std::uint32_t cref) const;

    void bump_var(Var v);
    void bump_clause(StoredClause& c);
    void heap_insert(Var v);
    void heap_up(std::size_t i);
    void heap_down(std::size_t i);
    Var heap_pop();
    bool heap_less(Var a, Var b) const;

    Var num_vars_ = 0;
    bool ok_ = true;
    std::optional<std::size_t> root_conflict_;

    std::vector<StoredClause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<std::int8_t> assigns_;
    std::vector<std::int8_t> phase_;
    std::vector<std::uint32_t> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<Literal> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<double> activity_;
    std::vector<Var> heap_;
    std::vector<std::int64_t> heap_pos_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;

    std::vector<char> seen_;
    std::size_t num_learnts_ = 0;
    double max_learnts_ = 0;

    std::uint64_t stats_conflicts_ = 0;
    std::uint64_t stats_decisions_ = 0;
    std::uint64_t stats_propagations_ = 0;
};

/// Unit propagation of `f` under `asserted`, from a fresh engine.
PropagationResult propagate(const CnfFormula& f, std::span<const Literal> asserted);

SolveResult solve(const CnfFormula& f, std::span<const Literal> assumptions = {}, const SolveLimits& limits = {});

/// Runs an external solver on `f` plus the assumptions as unit clauses.
/// `command` receives the DIMACS file path, substituted for `{input}` or
/// appended. Its stdout must start with SAT or UNSAT (an `s ` prefix and
/// `c ` comment lines are tolerated), followed by signed model literals.
SolveResult solve_external(const CnfFormula& f, const std::string& command,
                           std::span<const Literal> assumptions = {});

}  // namespace pbenc
