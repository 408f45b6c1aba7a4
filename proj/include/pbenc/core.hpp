#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbenc {

using Var = std::uint32_t;
using Weight = std::int64_t;

/// A Boolean variable or its negation. Stored as 2*var + sign so that
/// negation is a single xor and literals index dense arrays directly.
class Literal {
public:
    constexpr Literal() = default;

    static constexpr Literal positive(Var v) { return Literal(checked_code(v, false)); }
    static constexpr Literal negative(Var v) { return Literal(checked_code(v, true)); }
    static constexpr Literal from_code(std::uint32_t code) { return Literal(code); }

    /// Signed DIMACS convention: 3 is x3, -3 is not-x3.
    static Literal from_dimacs(std::int64_t lit);

    constexpr Var var() const { return code_ >> 1; }
    constexpr bool is_negative() const { return (code_ & 1u) != 0; }
    constexpr std::uint32_t code() const { return code_; }
    constexpr std::int64_t to_dimacs() const {
        return is_negative() ? -static_cast<std::int64_t>(var()) : static_cast<std::int64_t>(var());
    }
    constexpr bool valid() const { return code_ >= 2; }

    constexpr Literal operator~() const { return Literal(code_ ^ 1u); }

    friend constexpr bool operator==(Literal, Literal) = default;
    friend constexpr auto operator<=>(Literal a, Literal b) { return a.code_ <=> b.code_; }

private:
    constexpr explicit Literal(std::uint32_t code) : code_(code) {}

    static constexpr std::uint32_t checked_code(Var v, bool neg) {
        if (v == 0 || v > (std::numeric_limits<std::uint32_t>::max() >> 1) - 1) {
            throw std::invalid_argument("variable index out of range: " + std::to_string(v));
        }
        return (v << 1) | (neg ? 1u : 0u);
    }

    std::uint32_t code_ = 0;
};

constexpr Literal negate(Literal l) { return ~l; }

std::string to_string(Literal l);

struct Term {
    Weight weight = 0;
    Literal literal;

    friend bool operator==(const Term&, const Term&) = default;
};

enum class Relation { LessEq, GreaterEq, Equal };

std::string_view relation_symbol(Relation r);

/// Linear constraint sum(w_i * l_i) REL bound. Before normalization the
/// weights and bound may be arbitrary integers.
struct PBConstraint {
    std::vector<Term> terms;
    Relation relation = Relation::LessEq;
    Weight bound = 0;

    friend bool operator==(const PBConstraint&, const PBConstraint&) = default;
};

/// Normal form: relation <=, bound >= 0, weights in [1, bound + 1],
/// each variable in at most one term.
bool is_normal_form(const PBConstraint& c);

/// All weights equal to one.
bool is_cardinality(const PBConstraint& c);

/// Sum of weights; throws std::overflow_error instead of wrapping.
Weight weight_sum(const PBConstraint& c);

/// Truth value under a full assignment indexed by variable (index 0 unused).
bool evaluate(const PBConstraint& c, const std::vector<bool>& values);

std::string to_string(const PBConstraint& c);

Weight checked_add(Weight a, Weight b);
Weight checked_sub(Weight a, Weight b);
Weight checked_neg(Weight a);

using Clause = std::vector<Literal>;

/// Clause database. num_vars always covers every variable referenced by a
/// clause; an empty clause marks the formula as trivially unsatisfiable.
class CnfFormula {
public:
    CnfFormula() = default;
    explicit CnfFormula(Var num_vars) : num_vars_(num_vars) {}

    void add_clause(Clause clause);
    void add_clause(std::initializer_list<Literal> lits) { add_clause(Clause(lits)); }
    void add_unit(Literal l) { add_clause(Clause{l}); }
    void add_empty_clause() { add_clause(Clause{}); }

    void reserve_vars(Var n) {
        if (n > num_vars_) num_vars_ = n;
    }

    Var num_vars() const { return num_vars_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    bool trivially_unsat() const { return trivially_unsat_; }

    /// Drops the clause at `index`; test helper for mutation checks.
    void erase_clause(std::size_t index);

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
    Var num_vars_ = 0;
    std::vector<Clause> clauses_;
    bool trivially_unsat_ = false;
};

/// Monotone allocator for auxiliary variables.
class VarPool {
public:
    explicit VarPool(Var next_free = 1) : next_free_(next_free) {
        if (next_free == 0) throw std::invalid_argument("variable pool must start at 1 or above");
    }

    Var fresh_var();
    Var next_free() const { return next_free_; }
    /// Highest index below next_free.
    Var top() const { return next_free_ - 1; }

private:
    Var next_free_;
};

struct EncodingStats {
    std::uint64_t aux_vars = 0;
    std::uint64_t aux_clauses = 0;
    double wall_time_ms = 0.0;

    EncodingStats& operator+=(const EncodingStats& o) {
        aux_vars += o.aux_vars;
        aux_clauses += o.aux_clauses;
        wall_time_ms += o.wall_time_ms;
        return *this;
    }
};

/// A self-contained encoding of one constraint. Input variables are renumbered
/// densely from 1 in order of first appearance; input_map[i] is the formula
/// literal standing for terms[i].literal.
struct EncodingResult {
    CnfFormula formula;
    std::vector<Literal> input_map;
    EncodingStats stats;
    Var num_input_vars = 0;
};

}  // namespace pbenc
