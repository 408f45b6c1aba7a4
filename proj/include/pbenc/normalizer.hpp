#pragma once

#include <vector>

#include "pbenc/core.hpp"

namespace pbenc {

/// Result of bringing one constraint into `sum(w_i * l_i) <= k` form.
///
/// `forced_units` lists literals that must be false; they are emitted as
/// unit clauses of their negations. The original constraint holds exactly
/// when the normalized constraint (if any) and all forced units hold.
struct NormalizationOutcome {
    enum class Kind {
        Normalized,
        TriviallyTrue,
        TriviallyFalse,
        UnitsOnly,
        /// `=` constraints: `split` carries the `<=` and `>=` halves, each to
        /// be normalized and encoded separately.
        Equality,
    };

    Kind kind = Kind::TriviallyTrue;
    PBConstraint constraint;
    std::vector<Literal> forced_units;
    std::vector<PBConstraint> split;

    /// Negations of forced_units, i.e. the clauses to add.
    std::vector<Literal> unit_clauses() const;
};

NormalizationOutcome normalize(const PBConstraint& c);

/// Normalizes `c`, expanding an equality into the outcomes of its two halves.
std::vector<NormalizationOutcome> normalize_all(const PBConstraint& c);

}  // namespace pbenc
