#pragma once

#include <string_view>
#include <vector>

#include "pbenc/core.hpp"
#include "pbenc/opb_io.hpp"

namespace pbenc {

enum class Encoding { Gte, Swc, Adder, Totalizer, Auto };

std::string_view encoding_name(Encoding e);
/// Accepts gte, swc, adder, totalizer, auto. Throws std::invalid_argument.
Encoding parse_encoding(std::string_view name);
/// Comma-separated list.
std::vector<Encoding> parse_encoding_list(std::string_view names);

/// `auto` resolves to totalizer for cardinality constraints, gte otherwise.
Encoding resolve(Encoding e, const PBConstraint& normalized);

/// Appends the encoding of a normal-form constraint.
EncodingStats encode_normalized(const PBConstraint& c, Encoding e, VarPool& pool, CnfFormula& out);

/// Normalizes `c` and appends everything needed: forced unit clauses, an
/// empty clause for trivially false constraints, and the encoder's clauses
/// for each normalized part.
EncodingStats encode_any(const PBConstraint& c, Encoding e, VarPool& pool, CnfFormula& out);

/// Standalone encoding of one constraint with its input variables renumbered
/// 1..m in order of first appearance.
EncodingResult encode_constraint(const PBConstraint& c, Encoding e);

struct InstanceEncoding {
    CnfFormula formula;
    EncodingStats stats;
    /// Variables 1..input_vars are the instance's own; the rest are auxiliary.
    Var input_vars = 0;
    std::size_t encoded_constraints = 0;
    std::size_t cardinality_constraints = 0;
};

/// Encodes every constraint of the instance into one formula, keeping the
/// instance's variable numbering.
InstanceEncoding encode_instance(const PbInstance& inst, Encoding e);

}  // namespace pbenc
