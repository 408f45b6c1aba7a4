#include "pbenc/encoding.hpp"

#include <chrono>
#include <unordered_map>

#include "pbenc/baselines.hpp"
#include "pbenc/gte.hpp"
#include "pbenc/normalizer.hpp"

namespace pbenc {

std::string_view encoding_name(Encoding e) {
    switch (e) {
        case Encoding::Gte: return "gte";
        case Encoding::Swc: return "swc";
        case Encoding::Adder: return "adder";
        case Encoding::Totalizer: return "totalizer";
        case Encoding::Auto: return "auto";
    }
    return "?";
}

Encoding parse_encoding(std::string_view name) {
    for (Encoding e : {Encoding::Gte, Encoding::Swc, Encoding::Adder, Encoding::Totalizer, Encoding::Auto}) {
        if (encoding_name(e) == name) return e;
    }
    throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

std::vector<Encoding> parse_encoding_list(std::string_view names) {
    std::vector<Encoding> out;
    while (!names.empty()) {
        auto comma = names.find(',');
        std::string_view item = names.substr(0, comma);
        if (!item.empty()) out.push_back(parse_encoding(item));
        if (comma == std::string_view::npos) break;
        names.remove_prefix(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty encoding list");
    return out;
}

Encoding resolve(Encoding e, const PBConstraint& normalized) {
    if (e != Encoding::Auto) return e;
    return is_cardinality(normalized) ? Encoding::Totalizer : Encoding::Gte;
}

EncodingStats encode_normalized(const PBConstraint& c, Encoding e, VarPool& pool, CnfFormula& out) {
    switch (resolve(e, c)) {
        case Encoding::Gte: return encode_gte(c, pool, out).stats;
        case Encoding::Swc: return encode_swc(c, pool, out).stats;
        case Encoding::Adder: return encode_adder(c, pool, out).stats;
        case Encoding::Totalizer: return encode_totalizer(c, pool, out);
        case Encoding::Auto: break;
    }
    throw std::logic_error("unresolved encoding");
}

EncodingStats encode_any(const PBConstraint& c, Encoding e, VarPool& pool, CnfFormula& out) {
    auto start = std::chrono::steady_clock::now();
    const Var first_aux = pool.next_free();
    const std::size_t first_clause = out.num_clauses();

    for (const NormalizationOutcome& o : normalize_all(c)) {
        using Kind = NormalizationOutcome::Kind;
        if (o.kind == Kind::TriviallyFalse) {
            out.add_empty_clause();
            continue;
        }
        for (Literal u : o.unit_clauses()) out.add_unit(u);
        if (o.kind == Kind::Normalized) encode_normalized(o.constraint, e, pool, out);
    }

    out.reserve_vars(pool.top());
    EncodingStats stats;
    stats.aux_vars = pool.next_free() - first_aux;
    stats.aux_clauses = out.num_clauses() - first_clause;
    stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

EncodingResult encode_constraint(const PBConstraint& c, Encoding e) {
    EncodingResult res;
    std::unordered_map<Var, Var> dense;
    PBConstraint local = c;
    res.input_map.reserve(c.terms.size());
    for (Term& t : local.terms) {
        auto [it, inserted] = dense.try_emplace(t.literal.var(), static_cast<Var>(dense.size() + 1));
        t.literal = t.literal.is_negative() ? Literal::negative(it->second) : Literal::positive(it->second);
        res.input_map.push_back(t.literal);
    }
    res.num_input_vars = static_cast<Var>(dense.size());
    res.formula = CnfFormula(res.num_input_vars);
    VarPool pool(res.num_input_vars + 1);
    res.stats = encode_any(local, e, pool, res.formula);
    return res;
}

InstanceEncoding encode_instance(const PbInstance& inst, Encoding e) {
    InstanceEncoding enc;
    Var max_var = inst.declared_vars;
    for (const PBConstraint& c : inst.constraints) {
        for (const Term& t : c.terms) max_var = std::max(max_var, t.literal.var());
    }
    enc.input_vars = max_var;
    enc.formula = CnfFormula(max_var);
    VarPool pool(max_var + 1);

    auto start = std::chrono::steady_clock::now();
    for (const PBConstraint& c : inst.constraints) {
        for (const NormalizationOutcome& o : normalize_all(c)) {
            using Kind = NormalizationOutcome::Kind;
            if (o.kind == Kind::TriviallyFalse) {
                enc.formula.add_empty_clause();
                continue;
            }
            for (Literal u : o.unit_clauses()) enc.formula.add_unit(u);
            if (o.kind != Kind::Normalized) continue;
            ++enc.encoded_constraints;
            if (is_cardinality(o.constraint)) ++enc.cardinality_constraints;
            encode_normalized(o.constraint, e, pool, enc.formula);
        }
    }
    enc.formula.reserve_vars(pool.top());
    enc.stats.aux_vars = enc.formula.num_vars() - max_var;
    enc.stats.aux_clauses = enc.formula.num_clauses();
    enc.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return enc;
}

}  // namespace pbenc
