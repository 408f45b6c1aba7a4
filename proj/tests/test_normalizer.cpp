#include <catch_amalgamated.hpp>

#include <random>

#include "pbenc/normalizer.hpp"

using namespace pbenc;
using Kind = NormalizationOutcome::Kind;

namespace {

Literal x(Var v) { return Literal::positive(v); }
Literal nx(Var v) { return Literal::negative(v); }

bool lit_true(Literal l, const std::vector<bool>& a) { return a[l.var()] != l.is_negative(); }

// Truth of one outcome: forced literals false and the remaining constraint
// (if any) satisfied.
bool outcome_holds(const NormalizationOutcome& o, const std::vector<bool>& a) {
    switch (o.kind) {
        case Kind::TriviallyFalse: return false;
        case Kind::TriviallyTrue: return true;
        case Kind::Equality: return evaluate(o.split[0], a) && evaluate(o.split[1], a);
        default: break;
    }
    for (Literal l : o.forced_units) {
        if (lit_true(l, a)) return false;
    }
    return o.kind == Kind::UnitsOnly || evaluate(o.constraint, a);
}

bool all_hold(const std::vector<NormalizationOutcome>& outs, const std::vector<bool>& a) {
    for (const auto& o : outs) {
        if (!outcome_holds(o, a)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("ge with bound equal to the total forces every literal") {
    PBConstraint c{{{2, x(1)}, {3, x(2)}}, Relation::GreaterEq, 5};
    auto o = normalize(c);
    CHECK(o.kind == Kind::UnitsOnly);
    CHECK(o.forced_units == std::vector<Literal>{nx(1), nx(2)});
    CHECK(o.unit_clauses() == std::vector<Literal>{x(1), x(2)});
}

TEST_CASE("negative weight flips onto the negated literal") {
    PBConstraint c{{{-2, x(1)}, {3, x(2)}}, Relation::LessEq, 1};
    auto o = normalize(c);
    REQUIRE(o.kind == Kind::Normalized);
    CHECK(o.constraint == PBConstraint{{{2, nx(1)}, {3, x(2)}}, Relation::LessEq, 3});
    CHECK(is_normal_form(o.constraint));
}

TEST_CASE("merged weight above the bound forces a unit") {
    PBConstraint c{{{2, x(1)}, {3, x(1)}}, Relation::LessEq, 4};
    auto o = normalize(c);
    CHECK(o.kind == Kind::UnitsOnly);
    CHECK(o.unit_clauses() == std::vector<Literal>{nx(1)});
}

TEST_CASE("opposite polarities cancel into the bound") {
    PBConstraint c{{{4, x(1)}, {2, nx(1)}, {1, x(2)}}, Relation::LessEq, 4};
    auto o = normalize(c);
    REQUIRE(o.kind == Kind::Normalized);
    CHECK(o.constraint == PBConstraint{{{2, x(1)}, {1, x(2)}}, Relation::LessEq, 2});
    for (int m = 0; m < 4; ++m) {
        std::vector<bool> a{false, (m & 1) != 0, (m & 2) != 0};
        CHECK(evaluate(c, a) == evaluate(o.constraint, a));
    }
}

TEST_CASE("trivial outcomes") {
    PBConstraint neg_bound{{{1, x(1)}}, Relation::LessEq, -1};
    CHECK(normalize(neg_bound).kind == Kind::TriviallyFalse);

    PBConstraint loose{{{1, x(1)}, {1, x(2)}}, Relation::LessEq, 2};
    CHECK(normalize(loose).kind == Kind::TriviallyTrue);

    PBConstraint zeros{{{0, x(1)}, {0, x(2)}}, Relation::LessEq, 0};
    CHECK(normalize(zeros).kind == Kind::TriviallyTrue);

    PBConstraint ge_impossible{{{1, x(1)}}, Relation::GreaterEq, 2};
    CHECK(normalize(ge_impossible).kind == Kind::TriviallyFalse);
}

TEST_CASE("equality splits into two halves") {
    PBConstraint c{{{1, x(1)}, {1, x(2)}, {1, x(3)}}, Relation::Equal, 1};
    auto o = normalize(c);
    REQUIRE(o.kind == Kind::Equality);
    REQUIRE(o.split.size() == 2);
    CHECK(o.split[0].relation == Relation::LessEq);
    CHECK(o.split[1].relation == Relation::GreaterEq);
    auto outs = normalize_all(c);
    REQUIRE(outs.size() == 2);
    for (const auto& h : outs) CHECK(h.kind == Kind::Normalized);
}

TEST_CASE("normalization preserves semantics on random constraints") {
    std::mt19937_64 gen(20240611);
    std::uniform_int_distribution<int> nvars(1, 6), nterms(1, 8), weight(-10, 10), bound(-20, 20), rel(0, 2), coin(0, 1);
    std::size_t normalized = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int m = nvars(gen);
        std::uniform_int_distribution<int> var(1, m);
        PBConstraint c;
        const int n = nterms(gen);
        for (int i = 0; i < n; ++i) {
            Var v = static_cast<Var>(var(gen));
            c.terms.push_back({weight(gen), coin(gen) ? x(v) : nx(v)});
        }
        c.relation = static_cast<Relation>(rel(gen));
        c.bound = bound(gen);

        auto outs = normalize_all(c);
        for (const auto& o : outs) {
            REQUIRE(o.kind != Kind::Equality);
            if (o.kind == Kind::Normalized) {
                ++normalized;
                INFO(to_string(c) << "  =>  " << to_string(o.constraint));
                CHECK(is_normal_form(o.constraint));
                for (const Term& t : o.constraint.terms) CHECK(t.weight <= o.constraint.bound);
            }
        }
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<bool> a(static_cast<std::size_t>(m) + 1, false);
            for (int v = 1; v <= m; ++v) a[v] = ((mask >> (v - 1)) & 1u) != 0;
            INFO(to_string(c) << " mask " << mask);
            REQUIRE(evaluate(c, a) == all_hold(outs, a));
        }
    }
    CHECK(normalized > 500);
}

TEST_CASE("normalization overflow is reported, not wrapped") {
    constexpr Weight big = std::numeric_limits<Weight>::max();
    PBConstraint c{{{big, x(1)}, {big, x(2)}}, Relation::GreaterEq, 0};
    CHECK_THROWS_AS(normalize(c), std::overflow_error);
}
