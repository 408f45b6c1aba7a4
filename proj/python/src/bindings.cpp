#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pbenc/encoding.hpp"
#include "pbenc/gte.hpp"
#include "pbenc/harness.hpp"
#include "pbenc/normalizer.hpp"
#include "pbenc/opb_io.hpp"
#include "pbenc/sat.hpp"

namespace py = pybind11;
using namespace pbenc;

namespace {

// Literals cross the boundary as signed DIMACS integers.
using PyTerm = std::pair<Weight, std::int64_t>;

Relation relation_of(const std::string& s) {
    if (s == "<=") return Relation::LessEq;
    if (s == ">=") return Relation::GreaterEq;
    if (s == "=" || s == "==") return Relation::Equal;
    throw py::value_error("relation must be '<=', '>=' or '='");
}

PBConstraint make_constraint(const std::vector<PyTerm>& terms, const std::string& relation, Weight bound) {
    PBConstraint c;
    c.relation = relation_of(relation);
    c.bound = bound;
    for (const auto& [w, lit] : terms) c.terms.push_back({w, Literal::from_dimacs(lit)});
    return c;
}

std::vector<PyTerm> terms_of(const PBConstraint& c) {
    std::vector<PyTerm> out;
    for (const Term& t : c.terms) out.emplace_back(t.weight, t.literal.to_dimacs());
    return out;
}

std::vector<std::int64_t> dimacs(std::span<const Literal> lits) {
    std::vector<std::int64_t> out;
    for (Literal l : lits) out.push_back(l.to_dimacs());
    return out;
}

std::vector<Literal> literals(const std::vector<std::int64_t>& lits) {
    std::vector<Literal> out;
    for (std::int64_t l : lits) out.push_back(Literal::from_dimacs(l));
    return out;
}

const char* kind_name(NormalizationOutcome::Kind k) {
    switch (k) {
        case NormalizationOutcome::Kind::Normalized: return "normalized";
        case NormalizationOutcome::Kind::TriviallyTrue: return "trivially_true";
        case NormalizationOutcome::Kind::TriviallyFalse: return "trivially_false";
        case NormalizationOutcome::Kind::UnitsOnly: return "units_only";
        case NormalizationOutcome::Kind::Equality: return "equality";
    }
    return "?";
}

py::dict stats_dict(const EncodingStats& s) {
    py::dict d;
    d["aux_vars"] = s.aux_vars;
    d["aux_clauses"] = s.aux_clauses;
    d["encode_ms"] = s.wall_time_ms;
    return d;
}

SolveLimits limits_of(std::optional<double> timeout) {
    SolveLimits l;
    l.seconds = timeout;
    return l;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-Boolean to CNF encodings (generalized totalizer and baselines) with a CDCL checker";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<PBConstraint>(m, "Constraint")
        .def(py::init(&make_constraint), py::arg("terms"), py::arg("relation") = "<=", py::arg("bound") = 0,
             "terms: list of (weight, literal) with literals as signed integers")
        .def_property_readonly("terms", &terms_of)
        .def_property_readonly("relation", [](const PBConstraint& c) { return std::string(relation_symbol(c.relation)); })
        .def_readonly("bound", &PBConstraint::bound)
        .def("is_normal_form", &is_normal_form)
        .def("evaluate",
             [](const PBConstraint& c, const std::vector<bool>& values) {
                 std::vector<bool> a(values.size() + 1);
                 std::copy(values.begin(), values.end(), a.begin() + 1);
                 for (const Term& t : c.terms) {
                     if (t.literal.var() >= a.size()) throw py::index_error("assignment too short");
                 }
                 return evaluate(c, a);
             },
             py::arg("values"), "values[i] is the value of variable i+1")
        .def("__eq__", [](const PBConstraint& a, const PBConstraint& b) { return a == b; })
        .def("__repr__", [](const PBConstraint& c) { return "<Constraint " + to_string(c) + ">"; });

    py::class_<NormalizationOutcome>(m, "NormalizationOutcome")
        .def_property_readonly("kind", [](const NormalizationOutcome& o) { return kind_name(o.kind); })
        .def_readonly("constraint", &NormalizationOutcome::constraint)
        .def_property_readonly("unit_clauses", [](const NormalizationOutcome& o) { return dimacs(o.unit_clauses()); })
        .def("__repr__", [](const NormalizationOutcome& o) {
            return std::string("<NormalizationOutcome ") + kind_name(o.kind) + ">";
        });

    py::class_<CnfFormula>(m, "Formula")
        .def(py::init<>())
        .def_property_readonly("num_vars", &CnfFormula::num_vars)
        .def_property_readonly("num_clauses", &CnfFormula::num_clauses)
        .def_property_readonly("clauses",
                               [](const CnfFormula& f) {
                                   std::vector<std::vector<std::int64_t>> out;
                                   for (const Clause& c : f.clauses()) out.push_back(dimacs(c));
                                   return out;
                               })
        .def("add_clause", [](CnfFormula& f, const std::vector<std::int64_t>& c) { f.add_clause(literals(c)); })
        .def("to_dimacs", &to_dimacs)
        .def("__len__", &CnfFormula::num_clauses)
        .def("__eq__", [](const CnfFormula& a, const CnfFormula& b) { return a == b; });

    py::class_<PbInstance>(m, "Instance")
        .def_readonly("num_vars", &PbInstance::declared_vars)
        .def_readonly("constraints", &PbInstance::constraints)
        .def_readonly("warnings", &PbInstance::warnings)
        .def("to_opb", [](const PbInstance& inst) {
            std::ostringstream os;
            write_opb(inst, os);
            return os.str();
        });

    m.def("normalize", &normalize_all, py::arg("constraint"),
          "Normal-form outcomes; equalities yield one outcome per half");
    m.def("node_sums",
          [](const std::vector<Weight>& w, Weight k) { return node_sums(w, k); },
          py::arg("weights"), py::arg("k"));
    m.def("eq4_count", [](const std::vector<Weight>& w, Weight k) { return eq4_count(w, k); }, py::arg("weights"),
          py::arg("k"), "Distinct clamped subset sums by brute force");

    m.def(
        "encode",
        [](const PBConstraint& c, const std::string& encoding) {
            EncodingResult r = encode_constraint(c, parse_encoding(encoding));
            return py::make_tuple(r.formula, dimacs(r.input_map), stats_dict(r.stats));
        },
        py::arg("constraint"), py::arg("encoding") = "gte",
        "Returns (formula, input_map, stats); input variables are renumbered 1..m");
    m.def(
        "encode_instance",
        [](const PbInstance& inst, const std::string& encoding) {
            InstanceEncoding enc = encode_instance(inst, parse_encoding(encoding));
            return py::make_tuple(enc.formula, stats_dict(enc.stats));
        },
        py::arg("instance"), py::arg("encoding") = "gte");

    m.def("parse_opb", [](const std::string& text) { return parse_opb(std::string_view(text)); }, py::arg("text"));
    m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(std::string_view(text)); },
          py::arg("text"));

    m.def(
        "solve",
        [](const CnfFormula& f, const std::vector<std::int64_t>& assumptions, std::optional<double> timeout) {
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve(f, literals(assumptions), limits_of(timeout));
            }
            py::object model = py::none();
            if (r.status == SolveStatus::Sat) {
                std::vector<std::int64_t> lits;
                for (Var v = 1; v < r.model.size(); ++v) lits.push_back(r.model[v] ? v : -static_cast<std::int64_t>(v));
                model = py::cast(lits);
            }
            return py::make_tuple(std::string(status_name(r.status)), model);
        },
        py::arg("formula"), py::arg("assumptions") = std::vector<std::int64_t>{}, py::arg("timeout") = py::none(),
        "Returns (status, model) with status SAT, UNSAT or TIMEOUT");

    m.def(
        "propagate",
        [](const CnfFormula& f, const std::vector<std::int64_t>& asserted) {
            PropagationResult r = propagate(f, literals(asserted));
            py::dict d;
            d["conflict"] = r.conflict();
            d["implied"] = dimacs(r.implied);
            d["conflict_clause"] = r.conflict_clause;
            return d;
        },
        py::arg("formula"), py::arg("asserted") = std::vector<std::int64_t>{});

    m.def(
        "oracle_check",
        [](const PBConstraint& c, const std::string& encoding) {
            OracleVerdict v = oracle_check(c, parse_encoding(encoding));
            py::dict d;
            d["equisatisfiable"] = v.equisatisfiable;
            d["assignments_checked"] = v.assignments_checked;
            if (v.counterexample) {
                std::vector<bool> cx(v.counterexample->begin() + 1, v.counterexample->end());
                d["counterexample"] = cx;
                d["constraint_holds"] = v.constraint_holds;
            } else {
                d["counterexample"] = py::none();
            }
            return d;
        },
        py::arg("constraint"), py::arg("encoding") = "gte");

    m.def(
        "gac_check",
        [](const PBConstraint& c, const std::string& encoding, std::size_t trials, std::uint64_t seed) {
            py::list out;
            for (const GacReport& r : gac_check(c, parse_encoding(encoding), trials, seed)) {
                py::dict d;
                d["partial"] = dimacs(r.partial);
                d["required"] = dimacs(r.required);
                d["propagated"] = dimacs(r.propagated);
                d["missing"] = dimacs(r.missing);
                d["conflict"] = r.conflict;
                d["pass"] = r.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("constraint"), py::arg("encoding") = "gte", py::arg("trials") = 100, py::arg("seed") = 1);

    m.def(
        "gen_bench",
        [](const std::string& family, std::uint64_t seed, std::size_t num_literals, std::size_t num_constraints,
           Weight max_weight, double bound_fraction) {
            BenchSpec spec;
            spec.family = parse_family(family);
            spec.seed = seed;
            spec.num_literals = num_literals;
            spec.num_constraints = num_constraints;
            spec.max_weight = max_weight;
            spec.bound_fraction = bound_fraction;
            return gen_bench(spec);
        },
        py::arg("family") = "pb12like", py::arg("seed") = 1, py::arg("num_literals") = 50,
        py::arg("num_constraints") = 10, py::arg("max_weight") = 456, py::arg("bound_fraction") = 0.5);

    m.def(
        "stats",
        [](const PbInstance& inst, const std::string& encoders, bool do_solve, std::optional<double> timeout,
           const std::string& name) {
            StatsOptions opts;
            opts.solve = do_solve;
            opts.limits = limits_of(timeout);
            auto encs = parse_encoding_list(encoders);
            std::vector<StatsRow> rows;
            {
                py::gil_scoped_release release;
                rows = stats_compare(name, inst, encs, opts);
            }
            py::list out;
            for (const StatsRow& r : rows) {
                py::dict d;
                d["instance"] = r.instance;
                d["encoder"] = r.encoder;
                d["aux_vars"] = r.aux_vars;
                d["aux_clauses"] = r.aux_clauses;
                d["encode_ms"] = r.encode_ms;
                d["solve_ms"] = r.solve_ms;
                d["result"] = r.result;
                out.append(d);
            }
            return out;
        },
        py::arg("instance"), py::arg("encoders") = "gte,swc,adder", py::arg("solve") = true,
        py::arg("timeout") = py::none(), py::arg("name") = "instance");
}
