#include "pbenc/normalizer.hpp"

#include <unordered_map>

namespace pbenc {

std::vector<Literal> NormalizationOutcome::unit_clauses() const {
    std::vector<Literal> units;
    units.reserve(forced_units.size());
    for (Literal l : forced_units) units.push_back(~l);
    return units;
}

namespace {

// Per-variable accumulation of weight on x and on ~x.
struct VarWeights {
    Var var;
    Weight pos = 0;
    Weight neg = 0;
};

}  // namespace

NormalizationOutcome normalize(const PBConstraint& c) {
    NormalizationOutcome out;
    if (c.relation == Relation::Equal) {
        out.kind = NormalizationOutcome::Kind::Equality;
        PBConstraint le = c;
        le.relation = Relation::LessEq;
        PBConstraint ge = c;
        ge.relation = Relation::GreaterEq;
        out.split = {std::move(le), std::move(ge)};
        return out;
    }

    Weight k = c.bound;
    bool flip = c.relation == Relation::GreaterEq;
    if (flip) {
        // sum w*l >= k  <=>  sum w*~l <= sum(w) - k
        Weight total = 0;
        for (const Term& t : c.terms) total = checked_add(total, t.weight);
        k = checked_sub(total, k);
    }

    std::vector<VarWeights> acc;
    std::unordered_map<Var, std::size_t> slot;
    acc.reserve(c.terms.size());
    slot.reserve(c.terms.size());

    for (const Term& t : c.terms) {
        if (!t.literal.valid()) throw std::invalid_argument("invalid literal in constraint");
        Literal l = flip ? ~t.literal : t.literal;
        Weight w = t.weight;
        if (w < 0) {
            // w*l = w - w*~l, so |w|*~l with the bound raised by |w|
            w = checked_neg(w);
            l = ~l;
            k = checked_add(k, w);
        }
        if (w == 0) continue;
        auto [it, inserted] = slot.try_emplace(l.var(), acc.size());
        if (inserted) acc.push_back({l.var()});
        VarWeights& vw = acc[it->second];
        if (l.is_negative()) {
            vw.neg = checked_add(vw.neg, w);
        } else {
            vw.pos = checked_add(vw.pos, w);
        }
    }

    // a*x + b*~x = (a-b)*x + b: cancel the smaller side into the bound.
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (const VarWeights& vw : acc) {
        Weight common = std::min(vw.pos, vw.neg);
        k = checked_sub(k, common);
        if (vw.pos > vw.neg) {
            terms.push_back({vw.pos - vw.neg, Literal::positive(vw.var)});
        } else if (vw.neg > vw.pos) {
            terms.push_back({vw.neg - vw.pos, Literal::negative(vw.var)});
        }
    }

    if (k < 0) {
        out.kind = NormalizationOutcome::Kind::TriviallyFalse;
        return out;
    }
    Weight total = 0;
    for (const Term& t : terms) total = checked_add(total, t.weight);
    if (total <= k) {
        out.kind = NormalizationOutcome::Kind::TriviallyTrue;
        return out;
    }

    std::vector<Term> kept;
    kept.reserve(terms.size());
    Weight kept_total = 0;
    for (const Term& t : terms) {
        if (t.weight > k) {
            out.forced_units.push_back(t.literal);
        } else {
            kept.push_back(t);
            kept_total += t.weight;
        }
    }

    if (kept_total <= k) {
        out.kind = NormalizationOutcome::Kind::UnitsOnly;
        return out;
    }
    out.kind = NormalizationOutcome::Kind::Normalized;
    out.constraint = PBConstraint{std::move(kept), Relation::LessEq, k};
    return out;
}

std::vector<NormalizationOutcome> normalize_all(const PBConstraint& c) {
    NormalizationOutcome first = normalize(c);
    if (first.kind != NormalizationOutcome::Kind::Equality) return {std::move(first)};
    std::vector<NormalizationOutcome> outs;
    for (const PBConstraint& half : first.split) outs.push_back(normalize(half));
    return outs;
}

}  // namespace pbenc
