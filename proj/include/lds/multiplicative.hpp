/*
 * Copyright 2026 The ldskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDS_MULTIPLICATIVE_HPP
#define LDS_MULTIPLICATIVE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lds/algnum.hpp"
#include "lds/intlinalg.hpp"

namespace lds {

// Dependence policy: rationals are decided exactly through signed
// prime-exponent vectors; other algebraic numbers through a bounded search
// for relations x^r = zeta * y^s with 1 <= r, |s| <= radius.  Every
// "dependent" answer is verified exactly; an "independent" answer for the
// algebraic case means "no relation with exponents inside the radius".
struct MultPolicy {
    long radius = 12;
};

struct MultRelation {
    long r = 0, s = 0;  // x^r = zeta * y^s
    AlgNum zeta;
};

inline std::optional<MultRelation> find_mult_relation(const AlgNum& x, const AlgNum& y,
                                                      const MultPolicy& policy = {}) {
    if (policy.radius < 1) throw dependence_undecided_error("dependence search radius < 1");
    if (x.is_rational() && y.is_rational()) {
        RatExponents vx = rat_exponents(x.as_rat());
        RatExponents vy = rat_exponents(y.as_rat());
        if (vx.exps.empty() || vy.exps.empty())
            throw invalid_argument_error("find_mult_relation on a root of unity");
        std::set<Int> primes;
        for (auto& [p, e] : vx.exps) primes.insert(p);
        for (auto& [p, e] : vy.exps) primes.insert(p);
        Int r0 = 0, s0 = 0;
        for (auto& p : primes) {
            Int ex = vx.exps.count(p) ? Int(vx.exps.at(p)) : Int(0);
            Int ey = vy.exps.count(p) ? Int(vy.exps.at(p)) : Int(0);
            if (r0 == 0 && s0 == 0) {
                Int g = int_gcd(abs(ex), abs(ey));
                if (g == 0) continue;
                r0 = ey / g;
                s0 = ex / g;
                if (r0 < 0) {
                    r0 = -r0;
                    s0 = -s0;
                }
                if (r0 == 0) return std::nullopt;
                continue;
            }
            if (ex * r0 != ey * s0) return std::nullopt;
        }
        if (s0 == 0) return std::nullopt;
        MultRelation rel;
        rel.r = static_cast<long>(r0.get_si());
        rel.s = static_cast<long>(s0.get_si());
        rel.zeta = x.pow(rel.r) * y.pow(rel.s).inverse();
        return rel;
    }
    // Bounded search, float-log prefilter, exact confirmation.
    double lx = std::log(std::abs(x.to_complex()));
    double ly = std::log(std::abs(y.to_complex()));
    for (long r = 1; r <= policy.radius; ++r) {
        for (long as = 1; as <= policy.radius; ++as) {
            for (long s : {as, -as}) {
                double gap = std::abs(r * lx - s * ly);
                if (gap > 1e-6 * (1.0 + std::abs(r * lx) + std::abs(s * ly)) + 1e-9) continue;
                AlgNum cand = x.pow(r) * y.pow(s).inverse();
                if (auto ord = cand.is_root_of_unity()) {
                    MultRelation rel;
                    rel.r = r;
                    rel.s = s;
                    rel.zeta = cand;
                    return rel;
                }
            }
        }
    }
    return std::nullopt;
}

struct MultDepResult {
    enum class Kind { dependent, independent, undecided } kind =
        MultDepResult::Kind::independent;
    AlgNum base;                  // w
    std::vector<long> exponents;  // r_i, gcd 1
    std::vector<AlgNum> torsion;  // zeta_i with u_i = zeta_i * w^{r_i}
};

// Write u_i = zeta_i * w^{r_i} for pairwise multiplicatively dependent
// inputs (all nonzero, none a root of unity).  w is built as an explicit
// product prod u_i^{c_i} via an extended gcd, so no symbolic roots appear.
inline MultDepResult mult_dep_normalize(const std::vector<AlgNum>& u,
                                        const MultPolicy& policy = {},
                                        bool positive_canonical = true) {
    MultDepResult res;
    if (u.empty()) throw invalid_argument_error("mult_dep_normalize on empty set");
    for (auto& x : u) {
        if (x.is_zero()) throw invalid_argument_error("mult_dep_normalize on zero");
        if (x.is_root_of_unity())
            throw invalid_argument_error("mult_dep_normalize on root of unity");
    }
    std::vector<Rat> q(u.size());
    q[0] = 1;
    for (std::size_t i = 1; i < u.size(); ++i) {
        auto rel = find_mult_relation(u[i], u[0], policy);
        if (!rel) return res;  // independent
        q[i] = Rat(rel->s, rel->r);  // u_i ~ u_0^{s/r} modulo torsion
        q[i].canonicalize();
    }
    Int b = 1;
    for (auto& qi : q) b = int_lcm(b, qi.get_den());
    std::vector<Int> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) a[i] = q[i].get_num() * (b / q[i].get_den());
    std::vector<Int> c;
    Int g = ext_gcd_list(a, c);
    AlgNum w(Rat(1));
    for (std::size_t i = 0; i < u.size(); ++i)
        if (c[i] != 0) w = w * u[i].pow(c[i]);

    std::vector<long> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = static_cast<long>(Int(a[i] / g).get_si());
    if (positive_canonical && w.is_rational() && w.as_rat() < 0) {
        // Fold the sign into the torsion part; keep rational bases positive.
        // (The torsion-minimal variant skips this so bases like -2 keep
        // their members torsion-free.)
        w = -w;
    }
    bool invert = w.is_rational() ? abs(w.as_rat()) < 1
                                  : std::abs(w.to_complex()) < 1.0 - 1e-12;
    if (invert) {
        w = w.inverse();
        for (auto& ri : r) ri = -ri;
    }

    res.kind = MultDepResult::Kind::dependent;
    res.base = w;
    res.exponents = r;
    for (std::size_t i = 0; i < u.size(); ++i) {
        AlgNum z = u[i] * w.pow(r[i]).inverse();
        if (!z.is_root_of_unity())
            throw dependence_undecided_error("pairwise relations failed to combine into a base");
        res.torsion.push_back(z);
    }
    return res;
}

// Exponent of the torsion subgroup of <gens>: the least M such that every
// root of unity expressible as a monomial in the generators is an M-th
// root of unity.  Generators are mapped onto a lattice over primes plus
// free symbols (rationals exactly; g with g^2 rational via half-exponents;
// quadratic conjugate pairs via their rational product; leftovers via the
// bounded pairwise search), kernel vectors are instantiated exactly and
// their orders collected.
inline unsigned long torsion_exponent(const std::vector<AlgNum>& gens,
                                      const MultPolicy& policy = {}) {
    unsigned long M = 1;
    std::vector<AlgNum> lat_vals;
    std::vector<std::map<Int, long>> lat_prime;           // scaled by 2
    std::vector<std::map<std::size_t, long>> lat_symbol;  // scaled by 2
    std::vector<AlgNum> deferred;

    auto prime_vec = [](const Rat& x, int scale) {
        std::map<Int, long> v;
        for (auto& [p, e] : rat_exponents(x).exps) v[p] = e * scale;
        return v;
    };

    for (const AlgNum& g : gens) {
        if (g.is_zero()) throw invalid_argument_error("torsion_exponent on zero");
        if (auto ord = g.is_root_of_unity()) {
            M = std::lcm(M, static_cast<unsigned long>(*ord));
            continue;
        }
        if (g.is_rational()) {
            lat_vals.push_back(g);
            lat_prime.push_back(prime_vec(g.as_rat(), 2));
            lat_symbol.push_back({});
            continue;
        }
        AlgNum sq = g * g;
        if (sq.is_rational()) {
            lat_vals.push_back(g);
            lat_prime.push_back(prime_vec(sq.as_rat(), 1));
            lat_symbol.push_back({});
            continue;
        }
        deferred.push_back(g);
    }

    std::size_t n_symbols = 0;
    std::vector<bool> used(deferred.size(), false);
    for (std::size_t i = 0; i < deferred.size(); ++i) {
        if (used[i]) continue;
        std::size_t sym = n_symbols++;
        used[i] = true;
        lat_vals.push_back(deferred[i]);
        lat_prime.push_back({});
        lat_symbol.push_back({{sym, 2}});
        for (std::size_t j = i + 1; j < deferred.size(); ++j) {
            if (used[j]) continue;
            AlgNum prod = deferred[i] * deferred[j];
            if (prod.is_rational()) {
                // deferred[j] = prod * deferred[i]^{-1}
                lat_vals.push_back(deferred[j]);
                lat_prime.push_back(prime_vec(prod.as_rat(), 2));
                lat_symbol.push_back({{sym, -2}});
                used[j] = true;
                continue;
            }
            auto rel = find_mult_relation(deferred[j], deferred[i], policy);
            if (!rel) continue;
            if ((2 * rel->s) % rel->r == 0) {
                lat_vals.push_back(deferred[j]);
                lat_prime.push_back({});
                lat_symbol.push_back({{sym, 2 * rel->s / rel->r}});
            } else if (auto t = rel->zeta.is_root_of_unity()) {
                // Keep at least the pair's own torsion.
                M = std::lcm(M, static_cast<unsigned long>(*t));
            }
            used[j] = true;
        }
    }

    if (lat_vals.empty()) return M;

    std::set<Int> primes;
    for (auto& v : lat_prime)
        for (auto& [p, e] : v) primes.insert(p);
    std::vector<Int> plist(primes.begin(), primes.end());
    std::size_t rows = plist.size() + n_symbols;
    IntMat cols;
    for (std::size_t i = 0; i < lat_vals.size(); ++i) {
        IntVec col(rows, 0);
        for (std::size_t pi = 0; pi < plist.size(); ++pi) {
            auto it = lat_prime[i].find(plist[pi]);
            if (it != lat_prime[i].end()) col[pi] = it->second;
        }
        for (auto& [s, e] : lat_symbol[i]) col[plist.size() + s] = e;
        cols.push_back(std::move(col));
    }
    for (auto& e : integer_kernel(cols)) {
        AlgNum prod(Rat(1));
        for (std::size_t i = 0; i < lat_vals.size(); ++i)
            if (e[i] != 0) prod = prod * lat_vals[i].pow(e[i]);
        if (auto ord = prod.is_root_of_unity())
            M = std::lcm(M, static_cast<unsigned long>(*ord));
    }
    return M;
}

}  // namespace lds

#endif
