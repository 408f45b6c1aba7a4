#pragma once

#include <optional>
#include <vector>

#include "pbenc/core.hpp"

namespace pbenc {

/// Sequential weighted counter. Register s_{i,j} (1 <= i <= n, 1 <= j <= k)
/// means "the first i terms weigh at least j". Rows are allocated in full,
/// n*k variables, with no trimming by prefix maxima.
struct SwcEncoding {
    /// registers[i][j-1] is s_{i+1,j}.
    std::vector<std::vector<Literal>> registers;
    EncodingStats stats;
};

SwcEncoding encode_swc(const PBConstraint& c, VarPool& pool, CnfFormula& out);

/// Adder network: weights are split into bit buckets, reduced with full and
/// half adders to a binary sum, and the sum is compared against k.
struct AdderEncoding {
    /// sum_bits[b] is the literal for bit b of the sum, absent when the bucket
    /// ended up empty (the bit is constant 0).
    std::vector<std::optional<Literal>> sum_bits;
    std::size_t full_adders = 0;
    std::size_t half_adders = 0;
    EncodingStats stats;
};

/// Works on any positive weights and non-negative bound, normalized or not.
AdderEncoding encode_adder(const PBConstraint& c, VarPool& pool, CnfFormula& out);

/// Cardinality entry point: the unit-weight case of the generalized
/// totalizer. Throws std::invalid_argument on any weight other than 1.
EncodingStats encode_totalizer(const PBConstraint& c, VarPool& pool, CnfFormula& out);

}  // namespace pbenc
