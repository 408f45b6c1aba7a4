#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "pbenc/opb_io.hpp"

using namespace pbenc;

namespace {

Literal x(Var v) { return Literal::positive(v); }

}  // namespace

TEST_CASE("parse a single constraint") {
    PbInstance inst = parse_opb("+2 x1 +3 x2 <= 5 ;");
    REQUIRE(inst.constraints.size() == 1);
    CHECK(inst.constraints[0] == PBConstraint{{{2, x(1)}, {3, x(2)}}, Relation::LessEq, 5});
    CHECK(inst.declared_vars == 2);
    CHECK(inst.warnings.empty());
}

TEST_CASE("header fields") {
    PbInstance inst = parse_opb("* #variable= 4 #constraint= 1\n+2 x1 +3 x2 +3 x3 +3 x4 <= 5 ;\n");
    CHECK(inst.declared_vars == 4);
    CHECK(inst.declared_constraints == 1);
    REQUIRE(inst.constraints.size() == 1);
    CHECK(inst.constraints[0] ==
          PBConstraint{{{2, x(1)}, {3, x(2)}, {3, x(3)}, {3, x(4)}}, Relation::LessEq, 5});
    CHECK(inst.warnings.empty());
}

TEST_CASE("relations, negated literals and comments") {
    const char* text =
        "* #variable= 3 #constraint= 3\n"
        "* a comment line\n"
        "-1 ~x1 +2 x3 >= -1 ;\n"
        "  +1 x1 +1 x2 = 1;\n"
        "+ 4 x2\t-3 ~x3 <= 0 ;\n";
    PbInstance inst = parse_opb(text);
    REQUIRE(inst.constraints.size() == 3);
    CHECK(inst.constraints[0] == PBConstraint{{{-1, Literal::negative(1)}, {2, x(3)}}, Relation::GreaterEq, -1});
    CHECK(inst.constraints[1].relation == Relation::Equal);
    CHECK(inst.constraints[2] == PBConstraint{{{4, x(2)}, {-3, Literal::negative(3)}}, Relation::LessEq, 0});
}

TEST_CASE("variables beyond the header extend it with a warning") {
    PbInstance inst = parse_opb("* #variable= 2 #constraint= 1\n+1 x5 +1 x1 <= 1 ;\n");
    CHECK(inst.declared_vars == 5);
    REQUIRE(inst.warnings.size() == 1);
    CHECK(inst.warnings[0].find("x5") != std::string::npos);
}

TEST_CASE("malformed opb input") {
    auto error_of = [](std::string_view text) -> std::string {
        try {
            parse_opb(text);
        } catch (const ParseError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(error_of("+1 x1 +1 x2 ;").find("missing relation") != std::string::npos);
    CHECK(error_of("+1 x1 x2 <= 1 ;").find("non-linear") != std::string::npos);
    CHECK(error_of("+1 x1 <= 1").find("missing ';'") != std::string::npos);
    CHECK(error_of("x1 <= 1 ;").find("missing coefficient") != std::string::npos);
    CHECK(error_of("min: +1 x1 ;\n+1 x1 <= 1 ;").find("objective") != std::string::npos);
    CHECK(error_of("+1 x1 < 1 ;").find("unknown relation") != std::string::npos);
    CHECK(error_of("+1 y1 <= 1 ;").find("unexpected") != std::string::npos);
    CHECK(error_of("+x1 <= 1 ;").find("malformed coefficient") != std::string::npos);
    CHECK(error_of("+1 x0 <= 1 ;").find("out of range") != std::string::npos);
    CHECK(error_of("+99999999999999999999 x1 <= 1 ;").find("out of range") != std::string::npos);

    try {
        parse_opb("+1 x1 <= 1 ;\n+1 x2 >= 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("objective accepted when allowed") {
    OpbOptions opts;
    opts.allow_objective = true;
    PbInstance inst = parse_opb("min: +1 x1 -2 x2 ;\n+1 x1 +1 x2 >= 1 ;\n", opts);
    REQUIRE(inst.objective.has_value());
    CHECK(inst.objective->size() == 2);
    CHECK(inst.constraints.size() == 1);
}

TEST_CASE("write_dimacs format") {
    CnfFormula f;
    f.add_clause({x(1), Literal::negative(2)});
    CHECK(to_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
    CHECK(to_dimacs(CnfFormula{}) == "p cnf 0 0\n");
    CnfFormula e;
    e.add_empty_clause();
    CHECK(to_dimacs(e) == "p cnf 0 1\n0\n");
}

TEST_CASE("parse_dimacs inverts write_dimacs") {
    CnfFormula f = parse_dimacs("c hello\np cnf 2 1\n1 -2 0\n");
    CHECK(f.num_vars() == 2);
    REQUIRE(f.num_clauses() == 1);
    CHECK(f.clauses()[0] == Clause{x(1), Literal::negative(2)});
    CHECK(parse_dimacs("p cnf 0 0\n") == CnfFormula{});
    CHECK(parse_dimacs("p cnf 5 2\n1 2\n 3 0 -4 0\n%\n0\n").num_clauses() == 2);
    CHECK(parse_dimacs("p cnf 5 0\n").num_vars() == 5);
}

TEST_CASE("malformed dimacs input") {
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1a 0\n"), ParseError);
}

TEST_CASE("random formulas round-trip through dimacs") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        CnfFormula f(static_cast<Var>(gen() % 30));
        const int m = static_cast<int>(gen() % 20);
        for (int i = 0; i < m; ++i) {
            Clause c;
            const int len = static_cast<int>(gen() % 5);
            for (int j = 0; j < len; ++j) {
                Var v = static_cast<Var>(1 + gen() % 40);
                c.push_back(gen() % 2 ? x(v) : Literal::negative(v));
            }
            f.add_clause(c);
        }
        CHECK(parse_dimacs(to_dimacs(f)) == f);
    }
}

TEST_CASE("random instances round-trip through opb") {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 200; ++trial) {
        PbInstance inst;
        const int m = 1 + static_cast<int>(gen() % 6);
        for (int i = 0; i < m; ++i) {
            PBConstraint c;
            const int n = 1 + static_cast<int>(gen() % 6);
            for (int j = 0; j < n; ++j) {
                Var v = static_cast<Var>(1 + gen() % 12);
                Weight w = static_cast<Weight>(gen() % 2001) - 1000;
                c.terms.push_back({w, gen() % 2 ? x(v) : Literal::negative(v)});
                inst.declared_vars = std::max(inst.declared_vars, v);
            }
            c.relation = static_cast<Relation>(gen() % 3);
            c.bound = static_cast<Weight>(gen() % 4001) - 2000;
            inst.constraints.push_back(c);
        }
        std::ostringstream os;
        write_opb(inst, os);
        PbInstance back = parse_opb(os.str());
        CHECK(back.constraints == inst.constraints);
        CHECK(back.declared_vars == inst.declared_vars);
        CHECK(back.warnings.empty());
    }
}

TEST_CASE("parsers fail only with ParseError on garbage") {
    std::mt19937_64 gen(123);
    const std::string alphabet = "+-0123456789 x~<>=;*\n#pcnf%\t:minab";
    for (int trial = 0; trial < 20000; ++trial) {
        std::string s(gen() % 40, ' ');
        for (char& ch : s) ch = alphabet[gen() % alphabet.size()];
        try {
            parse_opb(s);
        } catch (const ParseError&) {
        }
        try {
            parse_dimacs(s);
        } catch (const ParseError&) {
        }
    }
    SUCCEED();
}
