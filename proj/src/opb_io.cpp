#include "pbenc/opb_io.hpp"

#include <cctype>
#include <charconv>
#include <iostream>
#include <iterator>
#include <sstream>

namespace pbenc {

namespace {

std::string slurp(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Character cursor with line/column tracking shared by both parsers.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

    void skip_blank() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) get();
    }
    std::string_view rest_of_line() {
        std::size_t start = pos_;
        while (!done() && peek() != '\n') get();
        return text_.substr(start, pos_ - start);
    }
    bool at_line_start() const {
        for (std::size_t i = pos_; i > 0; --i) {
            char c = text_[i - 1];
            if (c == '\n') return true;
            if (c != ' ' && c != '\t' && c != '\r') return false;
        }
        return true;
    }

    std::string_view digits() {
        std::size_t start = pos_;
        while (!done() && is_digit(peek())) get();
        return text_.substr(start, pos_ - start);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

std::int64_t to_int(std::string_view digits, bool negative, const Cursor& cur) {
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), magnitude);
    if (ec != std::errc() || ptr != digits.data() + digits.size() ||
        magnitude > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        cur.fail("integer out of range: " + std::string(digits));
    }
    auto v = static_cast<std::int64_t>(magnitude);
    return negative ? -v : v;
}

enum class Tok { Integer, Variable, Relation, Semicolon, Objective, End };

struct Token {
    Tok kind = Tok::End;
    std::int64_t value = 0;
    Literal literal;
    Relation relation = Relation::LessEq;
    std::size_t line = 0;
    std::size_t column = 0;
};

class OpbLexer {
public:
    OpbLexer(std::string_view text, PbInstance& inst) : cur_(text), inst_(inst) {}

    Token next() {
        for (;;) {
            cur_.skip_blank();
            if (cur_.done()) return make(Tok::End);
            if (cur_.peek() == '*' && cur_.at_line_start()) {
                read_comment(cur_.rest_of_line());
                continue;
            }
            break;
        }
        Token t = make(Tok::End);
        char c = cur_.peek();
        if (c == ';') {
            cur_.get();
            t.kind = Tok::Semicolon;
        } else if (c == '>' || c == '<') {
            cur_.get();
            if (cur_.peek() != '=') cur_.fail(std::string("unknown relation '") + c + "'");
            cur_.get();
            t.kind = Tok::Relation;
            t.relation = c == '>' ? Relation::GreaterEq : Relation::LessEq;
        } else if (c == '=') {
            cur_.get();
            t.kind = Tok::Relation;
            t.relation = Relation::Equal;
        } else if (c == '+' || c == '-' || is_digit(c)) {
            bool negative = false;
            if (c == '+' || c == '-') {
                negative = c == '-';
                cur_.get();
                while (cur_.peek() == ' ' || cur_.peek() == '\t') cur_.get();
            }
            std::string_view d = cur_.digits();
            if (d.empty()) cur_.fail("malformed coefficient");
            t.kind = Tok::Integer;
            t.value = to_int(d, negative, cur_);
        } else if (c == 'x' || c == '~') {
            bool negative = c == '~';
            cur_.get();
            if (negative) {
                if (cur_.peek() != 'x') cur_.fail("expected variable after '~'");
                cur_.get();
            }
            std::string_view d = cur_.digits();
            if (d.empty()) cur_.fail("malformed variable name");
            std::int64_t v = to_int(d, false, cur_);
            if (v < 1 || v > std::numeric_limits<std::int32_t>::max() - 1) cur_.fail("variable index out of range");
            t.kind = Tok::Variable;
            t.literal = negative ? Literal::negative(static_cast<Var>(v)) : Literal::positive(static_cast<Var>(v));
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (!cur_.done() && std::isalpha(static_cast<unsigned char>(cur_.peek()))) word.push_back(cur_.get());
            if ((word == "min" || word == "max") && cur_.peek() == ':') {
                cur_.get();
                t.kind = Tok::Objective;
            } else {
                cur_.fail("unexpected token '" + word + "'");
            }
        } else {
            cur_.fail(std::string("unexpected character '") + c + "'");
        }
        return t;
    }

    bool saw_header() const { return saw_header_; }

private:
    Token make(Tok kind) const {
        Token t;
        t.kind = kind;
        t.line = cur_.line();
        t.column = cur_.column();
        return t;
    }

    void read_comment(std::string_view line) {
        auto field = [&](std::string_view key) -> std::optional<std::int64_t> {
            auto at = line.find(key);
            if (at == std::string_view::npos) return std::nullopt;
            std::size_t i = at + key.size();
            while (i < line.size() && line[i] == ' ') ++i;
            std::size_t j = i;
            while (j < line.size() && is_digit(line[j])) ++j;
            if (i == j) return std::nullopt;
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
            if (ec != std::errc() || v > std::numeric_limits<std::int32_t>::max()) return std::nullopt;
            return static_cast<std::int64_t>(v);
        };
        if (auto nv = field("#variable=")) {
            inst_.declared_vars = static_cast<Var>(*nv);
            saw_header_ = true;
        }
        if (auto nc = field("#constraint=")) inst_.declared_constraints = static_cast<std::size_t>(*nc);
    }

    Cursor cur_;
    PbInstance& inst_;
    bool saw_header_ = false;
};

}  // namespace

PbInstance parse_opb(std::string_view text, const OpbOptions& opts) {
    PbInstance inst;
    OpbLexer lex(text, inst);
    std::optional<Token> lookahead;
    Var max_var = 0;

    auto peek = [&]() -> const Token& {
        if (!lookahead) lookahead = lex.next();
        return *lookahead;
    };
    auto take = [&]() {
        Token t = peek();
        lookahead.reset();
        return t;
    };
    auto fail = [](const Token& t, const std::string& what) { throw ParseError(what, t.line, t.column); };

    auto read_terms = [&](std::vector<Term>& terms) {
        while (peek().kind == Tok::Integer) {
            Token coef = take();
            if (peek().kind != Tok::Variable) {
                if (peek().kind == Tok::Semicolon || peek().kind == Tok::End) fail(coef, "missing relation");
                fail(peek(), "expected variable after coefficient");
            }
            Token var = take();
            if (peek().kind == Tok::Variable) fail(peek(), "non-linear product terms are not supported");
            terms.push_back({coef.value, var.literal});
            max_var = std::max(max_var, var.literal.var());
        }
        if (peek().kind == Tok::Variable) fail(peek(), "missing coefficient before variable");
    };

    while (peek().kind != Tok::End) {
        if (peek().kind == Tok::Objective) {
            Token obj_tok = take();
            if (!opts.allow_objective) {
                fail(obj_tok, "objective function present: only decision problems are supported");
            }
            std::vector<Term> obj;
            read_terms(obj);
            if (peek().kind != Tok::Semicolon) fail(peek(), "missing ';' after objective");
            take();
            inst.objective = std::move(obj);
            continue;
        }

        PBConstraint c;
        read_terms(c.terms);
        Token rel = take();
        if (rel.kind == Tok::End) fail(rel, "unexpected end of input: missing relation");
        if (rel.kind == Tok::Semicolon) fail(rel, "missing relation");
        if (rel.kind != Tok::Relation) fail(rel, "expected relation (>=, <= or =)");
        c.relation = rel.relation;
        Token bound = take();
        if (bound.kind != Tok::Integer) fail(bound, "expected integer bound");
        c.bound = bound.value;
        if (peek().kind != Tok::Semicolon) fail(peek(), "missing ';'");
        take();
        inst.constraints.push_back(std::move(c));
    }

    if (max_var > inst.declared_vars) {
        if (lex.saw_header()) {
            inst.warnings.push_back("variable x" + std::to_string(max_var) + " exceeds declared #variable= " +
                                    std::to_string(inst.declared_vars) + "; extending");
        }
        inst.declared_vars = max_var;
    }
    if (lex.saw_header() && inst.declared_constraints != inst.constraints.size()) {
        inst.warnings.push_back("read " + std::to_string(inst.constraints.size()) + " constraints, header declares " +
                                std::to_string(inst.declared_constraints));
    }
    return inst;
}

PbInstance parse_opb(std::istream& in, const OpbOptions& opts) { return parse_opb(std::string_view(slurp(in)), opts); }

void write_opb(const PbInstance& inst, std::ostream& out) {
    out << "* #variable= " << inst.declared_vars << " #constraint= " << inst.constraints.size() << "\n";
    for (const PBConstraint& c : inst.constraints) {
        for (const Term& t : c.terms) {
            out << (t.weight >= 0 ? "+" : "") << t.weight << ' ' << (t.literal.is_negative() ? "~x" : "x")
                << t.literal.var() << ' ';
        }
        out << relation_symbol(c.relation) << ' ' << c.bound << " ;\n";
    }
    if (!out) throw std::runtime_error("failed writing OPB output");
}

void write_dimacs(const CnfFormula& f, std::ostream& out) {
    std::string buf;
    buf.reserve(64);
    out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
    for (const Clause& c : f.clauses()) {
        buf.clear();
        for (Literal l : c) {
            buf += std::to_string(l.to_dimacs());
            buf += ' ';
        }
        buf += "0\n";
        out << buf;
    }
    out.flush();
    if (!out) throw std::runtime_error("failed writing DIMACS output");
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    write_dimacs(f, os);
    return os.str();
}

CnfFormula parse_dimacs(std::string_view text) {
    Cursor cur(text);
    bool have_header = false;
    std::int64_t declared_vars = 0;
    std::int64_t declared_clauses = 0;
    CnfFormula f;
    Clause clause;
    bool in_clause = false;

    auto read_int = [&]() -> std::int64_t {
        bool neg = false;
        if (cur.peek() == '-') {
            neg = true;
            cur.get();
        }
        std::string_view d = cur.digits();
        if (d.empty()) cur.fail("expected integer");
        if (!cur.done() && !std::isspace(static_cast<unsigned char>(cur.peek()))) cur.fail("malformed integer");
        return to_int(d, neg, cur);
    };

    for (;;) {
        cur.skip_blank();
        if (cur.done()) break;
        char c = cur.peek();
        if (c == 'c' && cur.at_line_start()) {
            cur.rest_of_line();
            continue;
        }
        if (c == '%' && cur.at_line_start()) break;
        if (c == 'p' && cur.at_line_start()) {
            if (have_header) cur.fail("duplicate problem line");
            cur.get();
            std::string_view line = cur.rest_of_line();
            std::istringstream ls{std::string(line)};
            std::string fmt;
            if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" || declared_vars < 0 ||
                declared_clauses < 0 || declared_vars > std::numeric_limits<std::int32_t>::max() - 1) {
                cur.fail("malformed problem line");
            }
            std::string extra;
            if (ls >> extra) cur.fail("trailing data on problem line");
            have_header = true;
            f = CnfFormula(static_cast<Var>(declared_vars));
            continue;
        }
        if (!have_header) cur.fail("clause before 'p cnf' header");
        std::int64_t lit = read_int();
        if (lit == 0) {
            f.add_clause(std::move(clause));
            clause = {};
            in_clause = false;
            continue;
        }
        if ((lit < 0 ? -lit : lit) > declared_vars) cur.fail("literal " + std::to_string(lit) + " exceeds declared variables");
        clause.push_back(Literal::from_dimacs(lit));
        in_clause = true;
    }
    if (in_clause) cur.fail("last clause is not terminated by 0");
    if (!have_header) cur.fail("missing 'p cnf' header");
    if (static_cast<std::int64_t>(f.num_clauses()) != declared_clauses) {
        cur.fail("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                 std::to_string(f.num_clauses()));
    }
    return f;
}

CnfFormula parse_dimacs(std::istream& in) { return parse_dimacs(std::string_view(slurp(in))); }

}  // namespace pbenc
