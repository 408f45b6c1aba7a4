#include "pbenc/core.hpp"

#include <sstream>
#include <unordered_set>

namespace pbenc {

Literal Literal::from_dimacs(std::int64_t lit) {
    if (lit == 0) throw std::invalid_argument("0 is not a literal");
    std::int64_t v = lit < 0 ? -lit : lit;
    if (v > std::numeric_limits<std::int32_t>::max() - 1) {
        throw std::invalid_argument("variable index out of range: " + std::to_string(lit));
    }
    return lit < 0 ? negative(static_cast<Var>(v)) : positive(static_cast<Var>(v));
}

std::string to_string(Literal l) {
    return (l.is_negative() ? "~x" : "x") + std::to_string(l.var());
}

std::string_view relation_symbol(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::GreaterEq: return ">=";
        case Relation::Equal: return "=";
    }
    return "?";
}

Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("weight arithmetic overflow");
    return r;
}

Weight checked_sub(Weight a, Weight b) {
    Weight r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("weight arithmetic overflow");
    return r;
}

Weight checked_neg(Weight a) { return checked_sub(0, a); }

bool is_normal_form(const PBConstraint& c) {
    if (c.relation != Relation::LessEq || c.bound < 0) return false;
    std::unordered_set<Var> seen;
    seen.reserve(c.terms.size());
    for (const Term& t : c.terms) {
        if (!t.literal.valid() || t.weight < 1 || t.weight > c.bound + 1) return false;
        if (!seen.insert(t.literal.var()).second) return false;
    }
    return true;
}

bool is_cardinality(const PBConstraint& c) {
    for (const Term& t : c.terms) {
        if (t.weight != 1) return false;
    }
    return true;
}

Weight weight_sum(const PBConstraint& c) {
    Weight s = 0;
    for (const Term& t : c.terms) s = checked_add(s, t.weight);
    return s;
}

bool evaluate(const PBConstraint& c, const std::vector<bool>& values) {
    Weight lhs = 0;
    for (const Term& t : c.terms) {
        bool v = values[t.literal.var()];
        if (v != t.literal.is_negative()) lhs = checked_add(lhs, t.weight);
    }
    switch (c.relation) {
        case Relation::LessEq: return lhs <= c.bound;
        case Relation::GreaterEq: return lhs >= c.bound;
        case Relation::Equal: return lhs == c.bound;
    }
    return false;
}

std::string to_string(const PBConstraint& c) {
    std::ostringstream os;
    for (const Term& t : c.terms) {
        os << (t.weight >= 0 ? "+" : "") << t.weight << ' ' << to_string(t.literal) << ' ';
    }
    os << relation_symbol(c.relation) << ' ' << c.bound;
    return os.str();
}

void CnfFormula::add_clause(Clause clause) {
    if (clause.empty()) trivially_unsat_ = true;
    for (Literal l : clause) {
        if (!l.valid()) throw std::invalid_argument("invalid literal in clause");
        if (l.var() > num_vars_) num_vars_ = l.var();
    }
    clauses_.push_back(std::move(clause));
}

void CnfFormula::erase_clause(std::size_t index) {
    clauses_.erase(clauses_.begin() + static_cast<std::ptrdiff_t>(index));
    trivially_unsat_ = false;
    for (const Clause& c : clauses_) {
        if (c.empty()) trivially_unsat_ = true;
    }
}

Var VarPool::fresh_var() {
    if (next_free_ >= (std::numeric_limits<std::uint32_t>::max() >> 1) - 1) {
        throw std::overflow_error("variable pool exhausted");
    }
    return next_free_++;
}

}  // namespace pbenc
