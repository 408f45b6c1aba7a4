#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbenc/core.hpp"

namespace pbenc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct PbInstance {
    /// From the `#variable=` header, extended to cover every variable used.
    Var declared_vars = 0;
    std::size_t declared_constraints = 0;
    std::vector<PBConstraint> constraints;
    /// `min:` line, kept only when OpbOptions::allow_objective is set.
    std::optional<std::vector<Term>> objective;
    std::vector<std::string> warnings;
};

struct OpbOptions {
    /// Objective lines are rejected by default: only decision problems are
    /// encoded.
    bool allow_objective = false;
};

/// Linear OPB: `* #variable= N #constraint= M` header, `*` comments,
/// constraints `(±w [~]x<i>)+ (>=|<=|=) k ;`. Product terms are rejected.
PbInstance parse_opb(std::istream& in, const OpbOptions& opts = {});
PbInstance parse_opb(std::string_view text, const OpbOptions& opts = {});

/// Writes the header and one constraint per line; output parses back to the
/// same constraints.
void write_opb(const PbInstance& inst, std::ostream& out);

/// `p cnf <vars> <clauses>` then one 0-terminated clause per line, single
/// spaces, LF endings, clauses and literals in stored order.
void write_dimacs(const CnfFormula& f, std::ostream& out);
std::string to_dimacs(const CnfFormula& f);

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);

}  // namespace pbenc
