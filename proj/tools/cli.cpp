#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pbenc/encoding.hpp"
#include "pbenc/harness.hpp"
#include "pbenc/normalizer.hpp"
#include "pbenc/opb_io.hpp"
#include "pbenc/sat.hpp"

namespace pbenc::cli {

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string encoding = "auto";
    std::string encoders;
    std::string input;
    std::string output;
    std::vector<std::string> inputs;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    double timeout = 0;
    double mem_limit_mb = 0;
    std::string external;
    bool no_solve = false;

    // gac-check
    std::size_t max_n = 5;
    Weight max_w = 4;
    Weight max_k = 10;

    // gen-bench / stats --generate
    std::string family = "pb12like";
    std::string generate;
    std::size_t count = 10;
    std::size_t literals = 50;
    std::size_t constraints = 10;
    std::size_t vars = 0;
    Weight max_weight = 456;
    double bound_fraction = 0.5;
};

PbInstance read_opb_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    try {
        return parse_opb(in);
    } catch (const ParseError& e) {
        throw IoFailure(path + ":" + e.what());
    }
}

SolveLimits limits_of(const Config& cfg) {
    SolveLimits l;
    if (cfg.timeout > 0) l.seconds = cfg.timeout;
    return l;
}

void note_auto(const Config& cfg, std::ostream& err) {
    if (cfg.encoding == "auto") {
        err << "c note: auto encodes cardinality constraints with the totalizer and all others with gte\n";
    }
}

int cmd_encode(const Config& cfg, std::ostream& out, std::ostream& err) {
    Encoding e = parse_encoding(cfg.encoding);
    PbInstance inst = read_opb_file(cfg.input);
    for (const auto& w : inst.warnings) err << "c warning: " << w << '\n';
    InstanceEncoding enc = encode_instance(inst, e);
    if (cfg.output.empty() || cfg.output == "-") {
        write_dimacs(enc.formula, out);
    } else {
        std::ofstream f(cfg.output);
        if (!f) throw IoFailure("cannot open " + cfg.output + " for writing");
        write_dimacs(enc.formula, f);
        if (!f) throw IoFailure("failed writing " + cfg.output);
    }
    note_auto(cfg, err);
    err << "aux_vars=" << enc.stats.aux_vars << " aux_clauses=" << enc.stats.aux_clauses
        << " encode_ms=" << enc.stats.wall_time_ms << '\n';
    return kSuccess;
}

int cmd_solve(const Config& cfg, std::ostream& out, std::ostream& err) {
    Encoding e = parse_encoding(cfg.encoding);
    PbInstance inst = read_opb_file(cfg.input);
    for (const auto& w : inst.warnings) err << "c warning: " << w << '\n';
    InstanceEncoding enc = encode_instance(inst, e);

    std::string external = cfg.external;
    if (external.empty()) {
        if (const char* env = std::getenv("PBENC_SOLVER")) external = env;
    }
    SolveResult r = external.empty() ? solve(enc.formula, {}, limits_of(cfg)) : solve_external(enc.formula, external);

    switch (r.status) {
        case SolveStatus::Sat: {
            out << "SAT\n";
            for (Var v = 1; v <= enc.input_vars; ++v) out << (r.model[v] ? "" : "-") << v << ' ';
            out << "0\n";
            return kSat;
        }
        case SolveStatus::Unsat: out << "UNSAT\n"; return kUnsat;
        case SolveStatus::Timeout: out << "TIMEOUT\n"; return kSuccess;
    }
    return kSuccess;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
    auto encoders = parse_encoding_list(cfg.encoders.empty() ? "gte,swc,adder" : cfg.encoders);
    Rng rng(cfg.seed);
    std::size_t checks = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const PBConstraint raw = random_raw(rng, 8, 10, 20);
        const PBConstraint normal = random_normalized(rng, 8, 10, 30, rng.chance(200));
        for (const PBConstraint* c : {&raw, &normal}) {
            for (Encoding e : encoders) {
                OracleVerdict v;
                try {
                    v = oracle_check(*c, e);
                } catch (const std::invalid_argument&) {
                    // totalizer on a non-cardinality constraint
                    if (e == Encoding::Totalizer) continue;
                    throw;
                }
                ++checks;
                if (!v.equisatisfiable) {
                    err << "counterexample: encoder " << encoding_name(e) << " on " << to_string(*c) << " at";
                    for (std::size_t i = 1; i < v.counterexample->size(); ++i) {
                        err << ' ' << ((*v.counterexample)[i] ? "" : "-") << i;
                    }
                    err << " (constraint " << (v.constraint_holds ? "holds" : "violated") << ")\n";
                    return kVerificationFailed;
                }
            }
        }
    }
    out << "verify: " << checks << " oracle checks passed (seed " << cfg.seed << ")\n";
    return kSuccess;
}

int cmd_gac(const Config& cfg, std::ostream& out, std::ostream& err) {
    auto encoders = parse_encoding_list(cfg.encoders.empty() ? "gte,swc" : cfg.encoders);
    Rng rng(cfg.seed);
    std::size_t cases = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        PBConstraint c = random_normalized(rng, cfg.max_n, cfg.max_w, cfg.max_k);
        for (Encoding e : encoders) {
            for (const GacReport& rep : gac_check(c, e, 256, rng.next())) {
                ++cases;
                if (rep.pass) continue;
                err << "GAC failure: encoder " << encoding_name(e) << " on " << to_string(rep.instance) << " under";
                for (Literal l : rep.partial) err << ' ' << to_string(l);
                err << (rep.conflict ? " (spurious conflict)" : "") << "; missing";
                for (Literal l : rep.missing) err << ' ' << to_string(l);
                err << '\n';
                return kVerificationFailed;
            }
        }
    }
    out << "gac-check: " << cases << " partial assignments passed (seed " << cfg.seed << ")\n";
    return kSuccess;
}

BenchSpec bench_spec(const Config& cfg, BenchFamily family, std::uint64_t seed) {
    BenchSpec spec;
    spec.family = family;
    spec.num_literals = cfg.literals;
    spec.num_constraints = cfg.constraints;
    spec.num_vars = cfg.vars;
    spec.max_weight = cfg.max_weight;
    spec.bound_fraction = cfg.bound_fraction;
    spec.seed = seed;
    return spec;
}

int cmd_stats(const Config& cfg, std::ostream& out, std::ostream& err) {
    auto encoders = parse_encoding_list(cfg.encoders.empty() ? "gte,swc,adder" : cfg.encoders);
    StatsOptions opts;
    opts.solve = !cfg.no_solve;
    opts.limits = limits_of(cfg);
    std::vector<std::pair<std::string, PbInstance>> instances;
    for (const std::string& path : cfg.inputs) instances.emplace_back(path, read_opb_file(path));
    if (!cfg.generate.empty()) {
        for (std::size_t i = 0; i < cfg.count; ++i) {
            BenchFamily fam = cfg.generate == "mixed" ? (i % 2 == 0 ? BenchFamily::Pb12Like : BenchFamily::PedigreeLike)
                                                      : parse_family(cfg.generate);
            std::uint64_t seed = cfg.seed + i;
            instances.emplace_back(std::string(family_name(fam)) + "-" + std::to_string(seed),
                                   gen_bench(bench_spec(cfg, fam, seed)));
        }
    }
    if (instances.empty()) throw CLI::ValidationError("stats needs input files or --generate");
    for (Encoding e : encoders) {
        if (e == Encoding::Auto) note_auto(Config{}, err);
    }
    out << kStatsHeader << '\n';
    for (const auto& [name, inst] : instances) {
        auto rows = stats_compare(name, inst, encoders, opts);
        write_stats_csv(rows, out, false);
    }
    err << "c generator: mt19937_64, seed " << cfg.seed << '\n';
    return kSuccess;
}

int cmd_gen(const Config& cfg, std::ostream& out, std::ostream&) {
    BenchSpec spec = bench_spec(cfg, parse_family(cfg.family), cfg.seed);
    PbInstance inst = gen_bench(spec);
    std::ostringstream body;
    write_opb(inst, body);
    std::string text = "* generated by pbenc gen-bench: family " + std::string(family_name(spec.family)) +
                       ", mt19937_64 seed " + std::to_string(spec.seed) + "\n" + body.str();
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) throw IoFailure("cannot open " + cfg.output + " for writing");
        f << text;
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-Boolean to CNF compiler with generalized totalizer and baseline encodings", "pbenc"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--mem-limit", cfg.mem_limit_mb, "Advisory memory limit in MB (recorded, not enforced)");

    const std::string enc_help = "Encoding: gte, swc, adder, totalizer or auto";
    auto* encode = app.add_subcommand("encode", "Encode an OPB instance to DIMACS CNF");
    encode->add_option("-e,--encoding", cfg.encoding, enc_help);
    encode->add_option("input", cfg.input, "OPB file")->required();
    encode->add_option("output", cfg.output, "DIMACS output file (stdout if omitted)");

    auto* solve_cmd = app.add_subcommand("solve", "Encode and solve an OPB instance");
    solve_cmd->add_option("-e,--encoding", cfg.encoding, enc_help);
    solve_cmd->add_option("input", cfg.input, "OPB file")->required();
    solve_cmd->add_option("--timeout", cfg.timeout, "Time limit in seconds");
    solve_cmd->add_option("--external", cfg.external, "External solver command (overrides PBENC_SOLVER)");

    auto* verify = app.add_subcommand("verify", "Brute-force equisatisfiability checks on random constraints");
    verify->add_option("--encoders", cfg.encoders, "Comma-separated encoders (default gte,swc,adder)");
    verify->add_option("--trials", cfg.trials, "Number of random trials");
    verify->add_option("--seed", cfg.seed, "Random seed");

    auto* gac = app.add_subcommand("gac-check", "Arc-consistency checks by unit propagation");
    gac->add_option("--encoders", cfg.encoders, "Comma-separated encoders (default gte,swc)");
    gac->add_option("--trials", cfg.trials, "Number of random constraints");
    gac->add_option("--seed", cfg.seed, "Random seed");
    gac->add_option("--max-n", cfg.max_n, "Maximum number of terms")->check(CLI::Range(2, 12));
    gac->add_option("--max-w", cfg.max_w, "Maximum weight")->check(CLI::PositiveNumber);
    gac->add_option("--max-k", cfg.max_k, "Maximum bound")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "Encoding size and solve-time comparison as CSV");
    stats->add_option("--encoders", cfg.encoders, "Comma-separated encoders (default gte,swc,adder)");
    stats->add_option("inputs", cfg.inputs, "OPB files");
    stats->add_option("--generate", cfg.generate, "Generate instances: pb12like, pedigreelike or mixed");
    stats->add_option("--count", cfg.count, "Number of generated instances");
    stats->add_option("--seed", cfg.seed, "Seed of the first generated instance");
    stats->add_option("--timeout", cfg.timeout, "Per-solve time limit in seconds");
    stats->add_flag("--no-solve", cfg.no_solve, "Only encode");
    stats->add_option("--literals", cfg.literals, "pedigreelike literal count");
    stats->add_option("--constraints", cfg.constraints, "pb12like constraint count");

    auto* gen = app.add_subcommand("gen-bench", "Write a generated benchmark instance as OPB");
    gen->add_option("--family", cfg.family, "pb12like or pedigreelike");
    gen->add_option("--seed", cfg.seed, "Random seed");
    gen->add_option("--literals", cfg.literals, "pedigreelike literal count");
    gen->add_option("--constraints", cfg.constraints, "pb12like constraint count");
    gen->add_option("--vars", cfg.vars, "pb12like variable pool size");
    gen->add_option("--max-weight", cfg.max_weight, "pedigreelike large weight");
    gen->add_option("--bound-fraction", cfg.bound_fraction, "pedigreelike bound as a fraction of the weight total");
    gen->add_option("-o,--output", cfg.output, "Output file (stdout if omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*encode) return cmd_encode(cfg, out, err);
        if (*solve_cmd) return cmd_solve(cfg, out, err);
        if (*verify) return cmd_verify(cfg, out, err);
        if (*gac) return cmd_gac(cfg, out, err);
        if (*stats) return cmd_stats(cfg, out, err);
        if (*gen) return cmd_gen(cfg, out, err);
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace pbenc::cli
