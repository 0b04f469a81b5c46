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

#ifndef LDS_ANALYSIS_HPP
#define LDS_ANALYSIS_HPP

#include <mpfr.h>

#include <functional>
#include <optional>

#include "lds/factories.hpp"

namespace lds {

// ---- division and strong-division checks -------------------------------------

// gcd with the ideal-theoretic convention gcd(0, x) = |x|.
inline Int gcd0(const Int& a, const Int& b) { return int_gcd(a, b); }

struct DivisionReport {
    unsigned long bound = 0;
    bool division_ok = true;
    bool strong_checked = false;
    bool strong_ok = true;
    // first counterexample (m, n) with the offending values
    std::optional<std::pair<unsigned long, unsigned long>> witness;
    Int witness_um, witness_un, witness_expected;

    bool ok() const { return division_ok && (!strong_checked || strong_ok); }
};

inline std::vector<Int> collect_terms(const IntSeq& u, unsigned long bound) {
    std::vector<Int> t(bound + 1);
    for (unsigned long n = 0; n <= bound; ++n) t[n] = u(n);
    return t;
}

inline DivisionReport check_division(const IntSeq& u, unsigned long bound) {
    if (bound < 2) throw invalid_argument_error("bound must be at least 2");
    DivisionReport rep;
    rep.bound = bound;
    auto t = collect_terms(u, bound);
    for (unsigned long m = 1; m <= bound && rep.division_ok; ++m)
        for (unsigned long n = m; n <= bound; n += m) {
            if (!divides(t[m], t[n])) {
                rep.division_ok = false;
                rep.witness = {m, n};
                rep.witness_um = t[m];
                rep.witness_un = t[n];
                break;
            }
        }
    return rep;
}

inline DivisionReport check_strong(const IntSeq& u, unsigned long bound) {
    DivisionReport rep = check_division(u, bound);
    rep.strong_checked = true;
    if (!rep.division_ok) {
        rep.strong_ok = false;
        return rep;
    }
    auto t = collect_terms(u, bound);
    for (unsigned long m = 1; m <= bound && rep.strong_ok; ++m)
        for (unsigned long n = m; n <= bound; ++n) {
            Int g = gcd0(t[m], t[n]);
            Int expect = abs(t[std::gcd(m, n)]);
            if (g != expect) {
                rep.strong_ok = false;
                rep.witness = {m, n};
                rep.witness_um = t[m];
                rep.witness_un = t[n];
                rep.witness_expected = expect;
                break;
            }
        }
    return rep;
}

// ---- Vandermonde-type determinants --------------------------------------------

inline AlgNum algnum_det(std::vector<std::vector<AlgNum>> m) {
    std::size_t n = m.size();
    AlgNum det(Rat(1));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col].is_zero()) ++sel;
        if (sel == n) return AlgNum(Rat(0));
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        AlgNum inv = m[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            AlgNum f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return det;
}

// Matrix with columns v_(j)(x_i) = (1/j!) (x d/dx)^j (1, x, ..., x^{k-1})^T
// for j < k_i; its determinant, computed directly.
inline AlgNum vandermonde_det(const std::vector<unsigned long>& parts,
                              const std::vector<AlgNum>& points) {
    if (parts.size() != points.size())
        throw invalid_argument_error("one point per partition part");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].is_zero()) throw invalid_argument_error("points must be nonzero");
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw invalid_argument_error("repeated point in Vandermonde data");
    }
    std::size_t k = 0;
    for (auto p : parts) k += p;
    // column for (x_i, j): entries r^j / j! * x_i^r, r = 0..k-1
    std::vector<std::vector<AlgNum>> m(k, std::vector<AlgNum>(k, AlgNum(Rat(0))));
    std::size_t col = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Int fact = 1;
        for (unsigned long j = 0; j < parts[i]; ++j) {
            if (j > 0) fact *= j;
            AlgNum xr(Rat(1));
            for (std::size_t r = 0; r < k; ++r) {
                Int rj = 1;
                for (unsigned long t = 0; t < j; ++t) rj *= static_cast<long>(r);
                Rat c(rj, fact);
                c.canonicalize();
                m[r][col] = AlgNum(c) * xr;
                xr = xr * points[i];
            }
            ++col;
        }
    }
    return algnum_det(m);
}

// The closed form +- prod x_j^{binom(k_j, 2)} prod_{i<j} (x_i - x_j)^{k_i k_j}.
inline AlgNum vandermonde_closed_form(const std::vector<unsigned long>& parts,
                                      const std::vector<AlgNum>& points) {
    AlgNum acc(Rat(1));
    for (std::size_t j = 0; j < parts.size(); ++j) {
        unsigned long c2 = parts[j] * (parts[j] - 1) / 2;
        acc = acc * points[j].pow(Int(static_cast<long>(c2)));
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            acc = acc * (points[i] - points[j]).pow(Int(static_cast<long>(parts[i] * parts[j])));
    return acc;
}

// ---- the gcd(x_0, x_n, ..., x_{(k-1)n}) divisor -------------------------------

// prod_j (n alpha_j^{n-1})^{binom(k_j,2)} * prod_{i<j} ((alpha_i^n - alpha_j^n)
// / (alpha_i - alpha_j))^{k_i k_j} for the characteristic roots of the spec.
inline AlgNum coolio_divisor(const std::vector<std::pair<AlgNum, std::size_t>>& roots,
                             unsigned long n) {
    AlgNum acc(Rat(1));
    AlgNum nn(Rat(static_cast<long>(n)));
    for (auto& [a, k] : roots) {
        unsigned long c2 = k * (k - 1) / 2;
        if (c2) acc = acc * (nn * a.pow(Int(static_cast<long>(n) - 1))).pow(Int(static_cast<long>(c2)));
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            auto& [ai, ki] = roots[i];
            auto& [aj, kj] = roots[j];
            AlgNum q = (ai.pow(Int(static_cast<long>(n))) - aj.pow(Int(static_cast<long>(n)))) *
                       (ai - aj).inverse();
            acc = acc * q.pow(Int(static_cast<long>(ki * kj)));
        }
    return acc;
}

struct CoolioReport {
    bool ok = true;
    std::optional<unsigned long> first_failure;
};

inline CoolioReport check_coolio(const RecurrenceSpec& spec, unsigned long n_max) {
    auto roots = factor_supported_roots(spec.char_poly());
    std::size_t k = spec.order();
    auto terms = eval_terms(spec, (k - 1) * n_max + 1);
    Int g0 = 0;
    for (std::size_t i = 0; i < k; ++i) g0 = gcd0(g0, terms[i]);
    CoolioReport rep;
    for (unsigned long n = 1; n <= n_max; ++n) {
        AlgNum d = coolio_divisor(roots, n);
        if (!d.is_rational() || d.as_rat().get_den() != 1)
            throw unsupported_field_error("divisor bound is not a rational integer");
        Int bound = g0 * d.as_rat().get_num();
        Int gn = 0;
        for (std::size_t i = 0; i < k; ++i) gn = gcd0(gn, terms[i * n]);
        if (!divides(gn, bound)) {
            rep.ok = false;
            rep.first_failure = n;
            return rep;
        }
    }
    return rep;
}

// ---- zeros of a division sequence ---------------------------------------------

struct ZeroStructure {
    unsigned long M = 1;                  // lcm of the zero divisors (1 if none)
    std::vector<unsigned long> divisors;  // minimal d with u_d = 0 (positive n only)
    bool no_positive_zeros = false;
};

struct not_an_lds_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline ZeroStructure zero_structure(const IntSeq& u, unsigned long bound) {
    DivisionReport pre = check_division(u, bound);
    if (!pre.division_ok)
        throw not_an_lds_error("division pretest failed at (" +
                               std::to_string(pre.witness->first) + "," +
                               std::to_string(pre.witness->second) + ")");
    auto t = collect_terms(u, bound);
    ZeroStructure z;
    std::vector<unsigned long> zeros;
    for (unsigned long n = 1; n <= bound; ++n)
        if (t[n] == 0) zeros.push_back(n);
    if (zeros.empty()) {
        z.no_positive_zeros = true;
        return z;
    }
    for (unsigned long n : zeros) {
        bool covered = false;
        for (unsigned long d : z.divisors) covered = covered || n % d == 0;
        if (!covered) z.divisors.push_back(n);
    }
    z.M = 1;
    for (unsigned long d : z.divisors) z.M = std::lcm(z.M, d);
    // cross-check the iff on the tested range
    for (unsigned long n = 1; n <= bound; ++n) {
        bool should = false;
        for (unsigned long d : z.divisors) should = should || n % d == 0;
        if (should != (t[n] == 0))
            throw not_an_lds_error("zero set is not a union of divisibility classes at n=" +
                                   std::to_string(n));
    }
    return z;
}

// ---- p-adic valuation laws ------------------------------------------------------

// Multiplicative order of gamma modulo p^e (gamma a p-adic unit).
inline unsigned long padic_order(const Rat& gamma, const Int& p, unsigned long e) {
    if (e == 0) throw invalid_argument_error("e must be positive");
    if (gamma == 0) throw invalid_argument_error("gamma must be nonzero");
    Int mod = int_pow(p, e);
    Int num = gamma.get_num() % mod, den = gamma.get_den() % mod;
    if (num < 0) num += mod;
    if (int_gcd(num, p) != 1 || int_gcd(den, p) != 1)
        throw invalid_argument_error("p divides gamma: " + gamma.get_str() + " at " + p.get_str());
    Int deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw invalid_argument_error("denominator not invertible");
    Int g = (num * deninv) % mod;
    // order divides phi(p^e)
    Int phi = int_pow(p, e - 1) * (p - 1);
    unsigned long best = 0;
    std::vector<Int> divs = {Int(1)};
    for (auto& [q, f] : factorize(phi)) {
        std::vector<Int> next;
        Int qk = 1;
        for (unsigned long i = 0; i <= f; ++i) {
            for (auto& d : divs) next.push_back(d * qk);
            qk *= q;
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    for (auto& d : divs) {
        Int r;
        mpz_powm(r.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        if (r == 1) {
            best = static_cast<unsigned long>(d.get_ui());
            break;
        }
    }
    if (best == 0) throw invalid_argument_error("order computation failed");
    return best;
}

// v_p(gamma^j - 1) through the lifting law: with g_e the order of gamma mod
// p^e (e = 1 for odd p, e = 2 for p = 2), v = v_p(gamma^{g_e} - 1) +
// v_p(j / g_e) when g_e | j, and the sub-threshold constant otherwise.
inline unsigned long padic_valuation_law(const Rat& gamma, const Int& p, unsigned long j) {
    if (j == 0) throw invalid_argument_error("j must be positive");
    if (gamma == 1 || gamma == -1)
        throw invalid_argument_error("gamma must not be +-1");
    auto direct = [&p](const Rat& x) {
        Rat y = x - 1;
        if (y == 0) throw invalid_argument_error("valuation of zero");
        return int_valuation(y.get_num(), p);
    };
    if (p == 2) {
        unsigned long g2 = padic_order(gamma, p, 2);  // order mod 4
        if (j % g2 == 0) {
            return direct(rat_pow(gamma, static_cast<long>(g2))) +
                   int_valuation(Int(j / g2), Int(2));
        }
        // gamma = 3 mod 4, j odd: gamma^j - 1 = 2 mod 4 exactly
        return 1;
    }
    unsigned long g1 = padic_order(gamma, p, 1);
    if (j % g1 != 0) return 0;
    return direct(rat_pow(gamma, static_cast<long>(g1))) + int_valuation(Int(j / g1), p);
}

// ---- rank of apparition ----------------------------------------------------------

// Least D <= bound with p^e | u_D, plus the iff check (p^e | u_n <=> D | n)
// over the whole range.
struct RankReport {
    std::optional<unsigned long> rank;
    bool iff_ok = true;
    std::optional<unsigned long> iff_failure;
};

inline RankReport rank_of_apparition(const IntSeq& u, const Int& p, unsigned long e,
                                     unsigned long bound) {
    Int q = int_pow(p, e);
    RankReport rep;
    auto t = collect_terms(u, bound);
    for (unsigned long n = 1; n <= bound; ++n)
        if (divides(q, t[n])) {
            rep.rank = n;
            break;
        }
    if (!rep.rank) return rep;
    unsigned long D = *rep.rank;
    for (unsigned long n = 1; n <= bound; ++n) {
        bool div = divides(q, t[n]);
        if (div != (n % D == 0)) {
            rep.iff_ok = false;
            rep.iff_failure = n;
            break;
        }
    }
    return rep;
}

// ---- multiplicative dependence and gcd collapse -----------------------------------

struct CollapseEntry {
    unsigned long n = 0;
    Int gcd_value;
    Int target;           // |numerator(w^n - 1)|
    bool torsion_trivial = false;
    bool above_threshold = false;
    bool matched = false;
};

struct CollapseReport {
    MultDepResult dep;
    std::vector<CollapseEntry> entries;
    bool ok = true;  // collapse holds whenever torsion vanishes and the gcd
                     // clears the 2^d smallness threshold
};

inline CollapseReport gcd_collapse_check(const std::vector<Rat>& u, unsigned long n_max,
                                         const MultPolicy& policy = {}) {
    std::vector<AlgNum> vals;
    for (auto& x : u) vals.emplace_back(x);
    CollapseReport rep;
    rep.dep = mult_dep_normalize(vals, policy);
    if (rep.dep.kind != MultDepResult::Kind::dependent)
        throw invalid_argument_error("gcd_collapse_check needs multiplicatively dependent input");
    Rat w = rep.dep.base.as_rat();
    for (unsigned long n = 1; n <= n_max; ++n) {
        CollapseEntry e;
        e.n = n;
        Int g = 0;
        for (auto& x : u) {
            Rat t = rat_pow(x, static_cast<long>(n)) - 1;
            g = gcd0(g, t.get_num());
        }
        e.gcd_value = abs(g);
        Rat wn = rat_pow(w, static_cast<long>(n)) - 1;
        e.target = abs(wn.get_num());
        e.torsion_trivial = true;
        for (auto& z : rep.dep.torsion)
            if (!z.pow(Int(static_cast<long>(n))).is_one()) e.torsion_trivial = false;
        e.above_threshold = e.gcd_value > 2;  // 2^d with d = 1 over Q
        e.matched = e.gcd_value == e.target;
        if (e.torsion_trivial && e.above_threshold && !e.matched) rep.ok = false;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---- monomial-count lower bound -----------------------------------------------------

struct MonomialBoundResult {
    bool ok = true;
    unsigned long r = 0, H = 0;  // witness data when violated: r <= H
};

// If prod (gamma_i^n - 1)^{h_i} divides a closed form with r distinct-root
// terms, then r >= H + 1 with H = sum h_i.
inline MonomialBoundResult monomial_bound_check(const std::vector<unsigned long>& h,
                                                const ExpPoly& ep0) {
    ExpPoly ep = ep0;
    ep.normalize();
    MonomialBoundResult res;
    for (auto x : h) res.H += x;
    res.r = ep.terms.size();
    res.ok = res.r >= res.H + 1;
    return res;
}

// ---- gcd growth detection ------------------------------------------------------------

// Exact verdict for value > e^{eps * s}: MPFR brackets the transcendental
// side with directed rounding, doubling precision until it separates.
inline bool exceeds_exp_threshold(const Int& value, const Rat& eps, unsigned long s) {
    if (value <= 1) return false;
    Rat x = eps * Rat(static_cast<long>(s));
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
        mpfr_exp(lo, lo, MPFR_RNDD);
        mpfr_exp(hi, hi, MPFR_RNDU);
        bool above_hi = mpfr_cmp_z(hi, value.get_mpz_t()) < 0;   // e^x < value
        bool below_lo = mpfr_cmp_z(lo, value.get_mpz_t()) >= 0;  // e^x >= value
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (above_hi) return true;
        if (below_lo) return false;
        if (prec > 1 << 20)
            throw std::runtime_error("threshold comparison did not separate");
    }
}

struct GcdGrowthPair {
    unsigned long m = 0, n = 0;
    Int gcd_value;
};

inline std::vector<GcdGrowthPair> gcd_growth_detect(const IntSeq& u, const IntSeq& v,
                                                    unsigned long n_max, const Rat& eps) {
    if (eps <= 0) throw invalid_argument_error("eps must be positive");
    std::vector<GcdGrowthPair> out;
    auto tu = collect_terms(u, n_max), tv = collect_terms(v, n_max);
    for (unsigned long m = 1; m <= n_max; ++m)
        for (unsigned long n = m; n <= n_max; ++n) {
            Int g = gcd0(tu[m], tv[n]);
            if (exceeds_exp_threshold(abs(g), eps, m + n)) out.push_back({m, n, abs(g)});
        }
    return out;
}

}  // namespace lds

#endif
