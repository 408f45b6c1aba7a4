#include "pbenc/sat.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <unistd.h>

#include "pbenc/opb_io.hpp"

namespace pbenc {

std::string_view status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Sat: return "SAT";
        case SolveStatus::Unsat: return "UNSAT";
        case SolveStatus::Timeout: return "TIMEOUT";
    }
    return "?";
}

bool PropagationResult::implies(Literal l) const {
    return std::find(implied.begin(), implied.end(), l) != implied.end();
}

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::uint64_t kRestartBase = 100;

double luby(double y, std::uint64_t x) {
    std::uint64_t size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}  // namespace

Solver::Solver(const CnfFormula& f) : num_vars_(f.num_vars()) {
    const std::size_t n = static_cast<std::size_t>(num_vars_) + 1;
    watches_.resize(2 * n);
    assigns_.assign(n, 0);
    phase_.assign(n, -1);
    level_.assign(n, 0);
    reason_.assign(n, kNoClause);
    activity_.assign(n, 0.0);
    heap_pos_.assign(n, -1);
    seen_.assign(n, 0);
    for (Var v = 1; v <= num_vars_; ++v) heap_insert(v);

    clauses_.reserve(f.num_clauses());
    for (std::size_t i = 0; i < f.num_clauses() && ok_; ++i) add_input_clause(f.clauses()[i], i);
    if (ok_) {
        std::uint32_t confl = propagate();
        if (confl != kNoClause) {
            ok_ = false;
            if (clauses_[confl].origin >= 0) root_conflict_ = static_cast<std::size_t>(clauses_[confl].origin);
        }
    }
    max_learnts_ = std::max<double>(static_cast<double>(f.num_clauses()) / 3.0, 2000.0);
}

void Solver::add_input_clause(const Clause& clause, std::size_t origin) {
    std::vector<Literal> lits = clause;
    for (Literal l : lits) {
        if (l.var() > num_vars_) throw std::invalid_argument("clause literal exceeds formula variables");
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
        if (lits[i] == ~lits[i - 1]) return;  // tautology
    }
    // Put non-false literals first; level-0 assignments may already exist.
    std::stable_partition(lits.begin(), lits.end(), [&](Literal l) { return value(l) != -1; });
    // A true literal is preferred as first watch.
    auto true_it = std::find_if(lits.begin(), lits.end(), [&](Literal l) { return value(l) == 1; });
    if (true_it != lits.end()) std::iter_swap(lits.begin(), true_it);

    auto cref = static_cast<std::uint32_t>(clauses_.size());
    clauses_.push_back({std::move(lits), static_cast<std::int64_t>(origin)});
    const auto& c = clauses_.back().lits;

    if (c.empty() || value(c[0]) == -1) {
        ok_ = false;
        root_conflict_ = origin;
        return;
    }
    if (c.size() == 1 || value(c[1]) == -1) {
        if (value(c[0]) == 0) enqueue(c[0], cref);
        if (c.size() >= 2) attach(cref);
        return;
    }
    attach(cref);
}

void Solver::attach(std::uint32_t cref) {
    const auto& c = clauses_[cref].lits;
    watches_[c[0].code()].push_back({cref, c[1]});
    watches_[c[1].code()].push_back({cref, c[0]});
}

void Solver::enqueue(Literal l, std::uint32_t reason) {
    assigns_[l.var()] = l.is_negative() ? -1 : 1;
    level_[l.var()] = static_cast<std::uint32_t>(decision_level());
    reason_[l.var()] = reason;
    trail_.push_back(l);
}

// Watch lists are indexed by the watched literal; they are visited when that
// literal becomes false.
std::uint32_t Solver::propagate() {
    std::uint32_t confl = kNoClause;
    while (qhead_ < trail_.size()) {
        Literal p = trail_[qhead_++];
        Literal false_lit = ~p;
        auto& ws = watches_[false_lit.code()];
        ++stats_propagations_;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i++];
            StoredClause& sc = clauses_[w.cref];
            if (sc.deleted) continue;
            if (value(w.blocker) == 1) {
                ws[j++] = w;
                continue;
            }
            auto& c = sc.lits;
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            Literal first = c[0];
            Watcher nw{w.cref, first};
            if (first != w.blocker && value(first) == 1) {
                ws[j++] = nw;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (value(c[k]) != -1) {
                    std::swap(c[1], c[k]);
                    watches_[c[1].code()].push_back(nw);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = nw;
            if (value(first) == -1) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < ws.size()) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
        if (confl != kNoClause) break;
    }
    return confl;
}

void Solver::cancel_until(std::size_t level) {
    if (decision_level() <= level) return;
    for (std::size_t c = trail_.size(); c > trail_lim_[level]; --c) {
        Var v = trail_[c - 1].var();
        phase_[v] = assigns_[v];
        assigns_[v] = 0;
        reason_[v] = kNoClause;
        if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
}

bool Solver::redundant(Literal l) const {
    std::uint32_t r = reason_[l.var()];
    if (r == kNoClause) return false;
    const auto& c = clauses_[r].lits;
    for (std::size_t i = 1; i < c.size(); ++i) {
        Var v = c[i].var();
        if (!seen_[v] && level_[v] > 0) return false;
    }
    return true;
}

void Solver::analyze(std::uint32_t confl, std::vector<Literal>& learnt, std::size_t& backtrack_level) {
    learnt.clear();
    learnt.push_back(Literal{});
    int path = 0;
    Literal p{};
    std::size_t index = trail_.size();

    for (;;) {
        StoredClause& sc = clauses_[confl];
        if (sc.learnt) bump_clause(sc);
        for (std::size_t j = p.valid() ? 1 : 0; j < sc.lits.size(); ++j) {
            Literal q = sc.lits[j];
            Var v = q.var();
            if (!seen_[v] && level_[v] > 0) {
                bump_var(v);
                seen_[v] = 1;
                if (level_[v] >= decision_level()) {
                    ++path;
                } else {
                    learnt.push_back(q);
                }
            }
        }
        while (!seen_[trail_[--index].var()]) {
        }
        p = trail_[index];
        confl = reason_[p.var()];
        seen_[p.var()] = 0;
        if (--path == 0) break;
    }
    learnt[0] = ~p;

    std::vector<Literal> kept{learnt[0]};
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        if (!redundant(learnt[i])) kept.push_back(learnt[i]);
    }
    for (std::size_t i = 1; i < learnt.size(); ++i) seen_[learnt[i].var()] = 0;
    learnt.swap(kept);

    backtrack_level = 0;
    if (learnt.size() > 1) {
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < learnt.size(); ++i) {
            if (level_[learnt[i].var()] > level_[learnt[max_i].var()]) max_i = i;
        }
        std::swap(learnt[1], learnt[max_i]);
        backtrack_level = level_[learnt[1].var()];
    }
}

bool Solver::heap_less(Var a, Var b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
}

void Solver::heap_up(std::size_t i) {
    Var v = heap_[i];
    while (i > 0) {
        std::size_t parent = (i - 1) / 2;
        if (!heap_less(v, heap_[parent])) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
    Var v = heap_[i];
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
        if (!heap_less(heap_[child], v)) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_insert(Var v) {
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

Var Solver::heap_pop() {
    Var top = heap_.front();
    heap_pos_[top] = -1;
    Var last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_down(0);
    }
    return top;
}

void Solver::bump_var(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (Var u = 1; u <= num_vars_; ++u) activity_[u] *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(StoredClause& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
        for (auto& sc : clauses_) {
            if (sc.learnt) sc.activity *= 1e-20;
        }
        clause_inc_ *= 1e-20;
    }
}

std::optional<Literal> Solver::pick_branch() {
    while (!heap_.empty()) {
        Var v = heap_pop();
        if (assigns_[v] == 0) return phase_[v] == 1 ? Literal::positive(v) : Literal::negative(v);
    }
    return std::nullopt;
}

bool Solver::locked(std::uint32_t cref) const {
    const auto& c = clauses_[cref].lits;
    return reason_[c[0].var()] == cref && value(c[0]) == 1;
}

void Solver::reduce_db() {
    std::vector<std::uint32_t> learnts;
    for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
        const auto& sc = clauses_[i];
        if (sc.learnt && !sc.deleted) learnts.push_back(i);
    }
    std::sort(learnts.begin(), learnts.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (clauses_[a].activity != clauses_[b].activity) return clauses_[a].activity < clauses_[b].activity;
        return a < b;
    });
    for (std::size_t i = 0; i < learnts.size() / 2; ++i) {
        std::uint32_t cref = learnts[i];
        StoredClause& sc = clauses_[cref];
        if (sc.lits.size() <= 2 || locked(cref)) continue;
        sc.deleted = true;
        sc.lits.clear();
        sc.lits.shrink_to_fit();
        --num_learnts_;
    }
}

SolveResult Solver::solve(std::span<const Literal> assumptions, const SolveLimits& limits) {
    SolveResult result;
    if (!ok_) return result;
    for (Literal a : assumptions) {
        if (a.var() > num_vars_) throw std::invalid_argument("assumption exceeds formula variables");
    }

    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const std::uint64_t conflicts_at_start = stats_conflicts_;
    std::uint64_t restarts = 0;
    std::vector<Literal> learnt;

    for (;;) {
        const auto restart_budget = static_cast<std::uint64_t>(luby(2, restarts) * kRestartBase);
        std::uint64_t conflicts_here = 0;
        for (;;) {
            std::uint32_t confl = propagate();
            if (confl != kNoClause) {
                ++stats_conflicts_;
                ++conflicts_here;
                if (decision_level() == 0) {
                    ok_ = false;
                    return result;
                }
                std::size_t bt = 0;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoClause);
                } else {
                    auto cref = static_cast<std::uint32_t>(clauses_.size());
                    clauses_.push_back({learnt, -1, 0.0, true, false});
                    attach(cref);
                    bump_clause(clauses_.back());
                    ++num_learnts_;
                    enqueue(learnt[0], cref);
                }
                var_inc_ /= kVarDecay;
                clause_inc_ /= kClauseDecay;

                if (limits.conflicts && stats_conflicts_ - conflicts_at_start >= *limits.conflicts) {
                    cancel_until(0);
                    result.status = SolveStatus::Timeout;
                    return result;
                }
                if (limits.seconds && (stats_conflicts_ & 63u) == 0 &&
                    std::chrono::duration<double>(Clock::now() - start).count() > *limits.seconds) {
                    cancel_until(0);
                    result.status = SolveStatus::Timeout;
                    return result;
                }
                continue;
            }

            if (conflicts_here >= restart_budget) {
                cancel_until(0);
                break;
            }
            if (static_cast<double>(num_learnts_) - static_cast<double>(trail_.size()) >= max_learnts_) {
                reduce_db();
                max_learnts_ *= 1.1;
            }

            std::optional<Literal> next;
            while (decision_level() < assumptions.size()) {
                Literal a = assumptions[decision_level()];
                if (value(a) == 1) {
                    trail_lim_.push_back(trail_.size());
                } else if (value(a) == -1) {
                    cancel_until(0);
                    return result;
                } else {
                    next = a;
                    break;
                }
            }
            if (!next) {
                next = pick_branch();
                if (!next) {
                    result.status = SolveStatus::Sat;
                    result.model.assign(static_cast<std::size_t>(num_vars_) + 1, false);
                    for (Var v = 1; v <= num_vars_; ++v) result.model[v] = assigns_[v] == 1;
                    cancel_until(0);
                    return result;
                }
                ++stats_decisions_;
            }
            trail_lim_.push_back(trail_.size());
            enqueue(*next, kNoClause);
        }
        ++restarts;
    }
}

PropagationResult Solver::probe(std::span<const Literal> literals) {
    PropagationResult res;
    if (!ok_) {
        res.kind = PropagationResult::Kind::Conflict;
        res.conflict_clause = root_conflict_;
        return res;
    }
    for (Literal l : literals) {
        if (l.var() > num_vars_) throw std::invalid_argument("asserted literal exceeds formula variables");
    }
    for (Literal l : literals) {
        if (value(l) == 1) continue;
        if (value(l) == -1) {
            res.kind = PropagationResult::Kind::Conflict;
            std::uint32_t r = reason_[l.var()];
            if (r != kNoClause && clauses_[r].origin >= 0) res.conflict_clause = static_cast<std::size_t>(clauses_[r].origin);
            break;
        }
        trail_lim_.push_back(trail_.size());
        enqueue(l, kNoClause);
        std::uint32_t confl = propagate();
        if (confl != kNoClause) {
            res.kind = PropagationResult::Kind::Conflict;
            if (clauses_[confl].origin >= 0) res.conflict_clause = static_cast<std::size_t>(clauses_[confl].origin);
            break;
        }
    }
    for (Literal t : trail_) {
        if (std::find(literals.begin(), literals.end(), t) == literals.end()) res.implied.push_back(t);
    }
    cancel_until(0);
    return res;
}

PropagationResult propagate(const CnfFormula& f, std::span<const Literal> asserted) {
    Var need = f.num_vars();
    for (Literal l : asserted) need = std::max(need, l.var());
    if (need == f.num_vars()) return Solver(f).probe(asserted);
    CnfFormula widened = f;
    widened.reserve_vars(need);
    return Solver(widened).probe(asserted);
}

SolveResult solve(const CnfFormula& f, std::span<const Literal> assumptions, const SolveLimits& limits) {
    return Solver(f).solve(assumptions, limits);
}

SolveResult solve_external(const CnfFormula& f, const std::string& command, std::span<const Literal> assumptions) {
    CnfFormula g = f;
    for (Literal a : assumptions) g.add_unit(a);

    std::string path = (std::filesystem::temp_directory_path() / "pbenc-XXXXXX.cnf").string();
    int fd = ::mkstemps(path.data(), 4);
    if (fd < 0) throw std::runtime_error("cannot create temporary DIMACS file");
    ::close(fd);
    struct Cleanup {
        std::string p;
        ~Cleanup() { std::filesystem::remove(p); }
    } cleanup{path};
    {
        std::ofstream out(path);
        write_dimacs(g, out);
    }

    std::string cmd = command;
    if (auto at = cmd.find("{input}"); at != std::string::npos) {
        cmd.replace(at, 7, path);
    } else {
        cmd += " " + path;
    }
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(cmd.c_str(), "r"), ::pclose);
    if (!pipe) throw std::runtime_error("cannot start external solver: " + command);
    std::string output;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe.get())) output.append(buf.data(), n);

    SolveResult result;
    std::istringstream in(output);
    std::string line;
    bool verdict = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (!verdict) {
            if (tok == "s") ls >> tok;
            if (tok == "SAT" || tok == "SATISFIABLE") {
                result.status = SolveStatus::Sat;
                result.model.assign(static_cast<std::size_t>(g.num_vars()) + 1, false);
            } else if (tok == "UNSAT" || tok == "UNSATISFIABLE") {
                result.status = SolveStatus::Unsat;
                return result;
            } else {
                throw std::runtime_error("unexpected external solver output: " + line);
            }
            verdict = true;
            continue;
        }
        if (tok != "v") {
            ls.clear();
            ls.seekg(0);
        }
        std::int64_t lit = 0;
        while (ls >> lit) {
            if (lit == 0) continue;
            std::int64_t v = lit < 0 ? -lit : lit;
            if (v <= static_cast<std::int64_t>(g.num_vars())) result.model[static_cast<std::size_t>(v)] = lit > 0;
        }
    }
    if (!verdict) throw std::runtime_error("external solver produced no SAT/UNSAT verdict");
    return result;
}

}  // namespace pbenc
