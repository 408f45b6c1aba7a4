#include "pbenc/baselines.hpp"

#include <chrono>
#include <deque>
#include <optional>

#include "pbenc/gte.hpp"

namespace pbenc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

SwcEncoding encode_swc(const PBConstraint& c, VarPool& pool, CnfFormula& out) {
    if (!is_normal_form(c)) throw std::invalid_argument("encode_swc expects a normal-form constraint");
    auto start = Clock::now();
    const Var first_aux = pool.next_free();
    const std::size_t first_clause = out.num_clauses();
    const Weight k = c.bound;
    const std::size_t n = c.terms.size();

    SwcEncoding enc;
    if (n == 0 || weight_sum(c) <= k) {
        enc.stats.wall_time_ms = elapsed_ms(start);
        return enc;
    }

    auto& s = enc.registers;
    s.resize(n);
    for (auto& row : s) {
        row.reserve(static_cast<std::size_t>(k));
        for (Weight j = 0; j < k; ++j) row.push_back(Literal::positive(pool.fresh_var()));
    }
    // reg(i, j) is s_{i+1, j} for j in [1, k]
    auto reg = [&](std::size_t i, Weight j) { return s[i][static_cast<std::size_t>(j - 1)]; };

    for (std::size_t i = 0; i < n; ++i) {
        const Literal x = c.terms[i].literal;
        const Weight w = c.terms[i].weight;
        if (i > 0) {
            for (Weight j = 1; j <= k; ++j) out.add_clause({~reg(i - 1, j), reg(i, j)});
        }
        for (Weight j = 1; j <= std::min(w, k); ++j) out.add_clause({~x, reg(i, j)});
        if (i > 0) {
            for (Weight j = 1; j + w <= k; ++j) out.add_clause({~x, ~reg(i - 1, j), reg(i, j + w)});
        }
        // overflow: x together with a prefix weighing k+1-w would exceed k
        const Weight t = k + 1 - w;
        if (t <= 0) {
            out.add_unit(~x);
        } else if (i > 0) {
            out.add_clause({~x, ~reg(i - 1, t)});
        }
    }

    out.reserve_vars(pool.top());
    enc.stats.aux_vars = pool.next_free() - first_aux;
    enc.stats.aux_clauses = out.num_clauses() - first_clause;
    enc.stats.wall_time_ms = elapsed_ms(start);
    return enc;
}

namespace {

Literal fresh(VarPool& pool) { return Literal::positive(pool.fresh_var()); }

// s <-> a xor b xor c ; carry <-> majority(a, b, c)
void full_adder(CnfFormula& out, Literal a, Literal b, Literal c, Literal s, Literal carry) {
    out.add_clause({~a, ~b, ~c, s});
    out.add_clause({~a, b, c, s});
    out.add_clause({a, ~b, c, s});
    out.add_clause({a, b, ~c, s});
    out.add_clause({a, b, c, ~s});
    out.add_clause({a, ~b, ~c, ~s});
    out.add_clause({~a, b, ~c, ~s});
    out.add_clause({~a, ~b, c, ~s});

    out.add_clause({~a, ~b, carry});
    out.add_clause({~a, ~c, carry});
    out.add_clause({~b, ~c, carry});
    out.add_clause({a, b, ~carry});
    out.add_clause({a, c, ~carry});
    out.add_clause({b, c, ~carry});
}

// s <-> a xor b ; carry <-> a and b
void half_adder(CnfFormula& out, Literal a, Literal b, Literal s, Literal carry) {
    out.add_clause({~a, ~b, ~s});
    out.add_clause({a, b, ~s});
    out.add_clause({~a, b, s});
    out.add_clause({a, ~b, s});

    out.add_clause({~a, ~b, carry});
    out.add_clause({a, ~carry});
    out.add_clause({b, ~carry});
}

}  // namespace

AdderEncoding encode_adder(const PBConstraint& c, VarPool& pool, CnfFormula& out) {
    if (c.relation != Relation::LessEq || c.bound < 0) {
        throw std::invalid_argument("encode_adder expects sum(w*l) <= k with k >= 0");
    }
    for (const Term& t : c.terms) {
        if (t.weight < 1) throw std::invalid_argument("encode_adder expects positive weights");
    }
    auto start = Clock::now();
    const Var first_aux = pool.next_free();
    const std::size_t first_clause = out.num_clauses();
    const Weight k = c.bound;

    AdderEncoding enc;
    if (c.terms.empty() || weight_sum(c) <= k) {
        enc.stats.wall_time_ms = elapsed_ms(start);
        return enc;
    }

    std::vector<std::deque<Literal>> buckets;
    for (const Term& t : c.terms) {
        auto w = static_cast<std::uint64_t>(t.weight);
        for (std::size_t b = 0; w != 0; ++b, w >>= 1) {
            if (w & 1u) {
                if (buckets.size() <= b) buckets.resize(b + 1);
                buckets[b].push_back(t.literal);
            }
        }
    }

    for (std::size_t b = 0; b < buckets.size(); ++b) {
        if (buckets[b].size() >= 2 && buckets.size() <= b + 1) buckets.resize(b + 2);
        auto& bucket = buckets[b];
        while (bucket.size() >= 2) {
            Literal x = bucket.front();
            bucket.pop_front();
            Literal y = bucket.front();
            bucket.pop_front();
            Literal sum = fresh(pool);
            Literal carry = fresh(pool);
            if (!bucket.empty()) {
                Literal z = bucket.front();
                bucket.pop_front();
                full_adder(out, x, y, z, sum, carry);
                ++enc.full_adders;
            } else {
                half_adder(out, x, y, sum, carry);
                ++enc.half_adders;
            }
            bucket.push_back(sum);
            buckets[b + 1].push_back(carry);
        }
        enc.sum_bits.push_back(bucket.empty() ? std::nullopt : std::optional<Literal>(bucket.front()));
    }

    // Comparator sum <= k. Bits above k's highest set bit must be 0; below
    // that, for every bit i with k_i = 0, forbid "s_i = 1 and all higher
    // bits equal to k".
    std::size_t k_bits = 0;
    for (auto kk = static_cast<std::uint64_t>(k); kk != 0; kk >>= 1) ++k_bits;
    auto k_bit = [&](std::size_t i) { return ((static_cast<std::uint64_t>(k) >> i) & 1u) != 0; };

    for (std::size_t i = k_bits; i < enc.sum_bits.size(); ++i) {
        if (enc.sum_bits[i]) out.add_unit(~*enc.sum_bits[i]);
    }
    for (std::size_t i = 0; i < std::min(k_bits, enc.sum_bits.size()); ++i) {
        if (k_bit(i) || !enc.sum_bits[i]) continue;
        Clause clause{~*enc.sum_bits[i]};
        bool satisfiable_prefix = true;
        for (std::size_t j = i + 1; j < k_bits; ++j) {
            const std::optional<Literal> sj = j < enc.sum_bits.size() ? enc.sum_bits[j] : std::nullopt;
            if (k_bit(j)) {
                // a constant-0 bit can never equal k's 1 here
                if (!sj) {
                    satisfiable_prefix = false;
                    break;
                }
                clause.push_back(~*sj);
            } else if (sj) {
                clause.push_back(*sj);
            }
        }
        if (satisfiable_prefix) out.add_clause(std::move(clause));
    }

    out.reserve_vars(pool.top());
    enc.stats.aux_vars = pool.next_free() - first_aux;
    enc.stats.aux_clauses = out.num_clauses() - first_clause;
    enc.stats.wall_time_ms = elapsed_ms(start);
    return enc;
}

EncodingStats encode_totalizer(const PBConstraint& c, VarPool& pool, CnfFormula& out) {
    if (!is_cardinality(c)) throw std::invalid_argument("encode_totalizer expects unit weights");
    return encode_gte(c, pool, out).stats;
}

}  // namespace pbenc
