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

#ifndef LDS_FACTORIES_HPP
#define LDS_FACTORIES_HPP

#include <functional>
#include <map>

#include "lds/lrs.hpp"
#include "lds/polylds.hpp"

// Constructors for the basic LDS families.  Normalization follows each
// family's own convention: periodic sequences keep their divisor values
// u_d, while power, exponential and polynomially generated sequences are 1
// at divisors of their period (0 at multiples for the power family with
// positive exponent).  No global normalization is imposed on composites.

namespace lds {

struct non_integral_result_error : std::domain_error {
    using std::domain_error::domain_error;
};

using IntSeq = std::function<Int(unsigned long)>;

// ---- periodic ---------------------------------------------------------------

struct PeriodicLDS {
    unsigned long M = 1;
    std::map<unsigned long, Int> values;  // u_d for each d | M
    std::map<unsigned long, int> signs;   // sigma_a, 1 <= a <= M; +1 on divisors

    Int eval(unsigned long n) const {
        unsigned long a = n % M == 0 ? M : n % M;
        unsigned long d = std::gcd(n == 0 ? M : n, M);
        return Int(signs.at(a)) * values.at(d);
    }
    IntSeq seq() const {
        return [copy = *this](unsigned long n) { return copy.eval(n); };
    }
};

inline PeriodicLDS make_periodic(unsigned long M, std::map<unsigned long, Int> values,
                                 std::map<unsigned long, int> signs) {
    if (M == 0) throw invalid_argument_error("period must be positive");
    for (unsigned long d : divisors_of(M))
        if (!values.count(d))
            throw invalid_argument_error("missing value u_" + std::to_string(d));
    for (auto& [d, v] : values)
        if (M % d != 0)
            throw invalid_argument_error("value key " + std::to_string(d) + " does not divide M");
    for (unsigned long a = 1; a <= M; ++a) {
        auto it = signs.find(a);
        if (it == signs.end()) {
            signs[a] = 1;
            continue;
        }
        if (it->second != 1 && it->second != -1)
            throw invalid_argument_error("signs must be +-1");
    }
    for (unsigned long d : divisors_of(M))
        if (signs.at(d == 0 ? M : d) != 1)
            throw invalid_argument_error("sigma_" + std::to_string(d) + " must be +1 on divisors");
    for (unsigned long d : divisors_of(M))
        for (unsigned long D : divisors_of(M))
            if (D % d == 0 && !divides(values.at(d), values.at(D)))
                throw invalid_argument_error("invariant violation: u_" + std::to_string(d) +
                                             " does not divide u_" + std::to_string(D) + " with " +
                                             std::to_string(d) + " | " + std::to_string(D));
    PeriodicLDS p{M, std::move(values), std::move(signs)};
    return p;
}

// ---- power ------------------------------------------------------------------

struct PowerLDS {
    unsigned long M = 1;
    std::map<unsigned long, unsigned long> exps;  // e_d for d | M

    Int eval(unsigned long n) const {
        if (n == 0) return exps.at(M) == 0 ? Int(1) : Int(0);
        unsigned long d = std::gcd(n, M);
        return int_pow(Int(n / d), exps.at(d));
    }
    IntSeq seq() const {
        return [copy = *this](unsigned long n) { return copy.eval(n); };
    }
};

inline PowerLDS make_power(unsigned long M, std::map<unsigned long, unsigned long> exps) {
    if (M == 0) throw invalid_argument_error("period must be positive");
    for (unsigned long d : divisors_of(M))
        if (!exps.count(d))
            throw invalid_argument_error("missing exponent e_" + std::to_string(d));
    for (unsigned long d : divisors_of(M))
        for (unsigned long D : divisors_of(M))
            if (D % d == 0 && exps.at(d) > exps.at(D))
                throw invalid_argument_error("invariant violation: e_" + std::to_string(d) +
                                             " > e_" + std::to_string(D) + " with " +
                                             std::to_string(d) + " | " + std::to_string(D));
    return PowerLDS{M, std::move(exps)};
}

// ---- exponential ------------------------------------------------------------

struct ExponentialLDS {
    unsigned long M = 1;
    std::vector<Int> primes;
    std::vector<std::vector<unsigned long>> tables;  // tables[i][a-1] = h_{i,a}

    Int eval(unsigned long n) const {
        if (n == 0) return 0;  // the family starts with u_0 = 0
        unsigned long a = n % M == 0 ? M : n % M;
        unsigned long k = (n - a) / M;
        Int acc = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            acc *= int_pow(primes[i], k * tables[i][a - 1]);
        return acc;
    }
    IntSeq seq() const {
        return [copy = *this](unsigned long n) { return copy.eval(n); };
    }
};

inline ExponentialLDS make_exponential(unsigned long M, std::vector<Int> primes,
                                       std::vector<std::vector<unsigned long>> tables) {
    if (M == 0) throw invalid_argument_error("period must be positive");
    if (primes.size() != tables.size())
        throw invalid_argument_error("one exponent table per prime");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (mpz_probab_prime_p(primes[i].get_mpz_t(), 30) == 0)
            throw invalid_argument_error("base " + primes[i].get_str() + " is not prime");
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j]) throw invalid_argument_error("primes must be distinct");
        if (tables[i].size() != M)
            throw invalid_argument_error("exponent table must have M entries");
        // h_a <= r*h_b whenever b = r*a (mod M), 1 <= a,b,r <= M
        for (unsigned long a = 1; a <= M; ++a)
            for (unsigned long r = 1; r <= M; ++r) {
                unsigned long b = (r * a) % M == 0 ? M : (r * a) % M;
                if (tables[i][a - 1] > r * tables[i][b - 1])
                    throw invalid_argument_error(
                        "invariant violation: h_" + std::to_string(a) + " > " +
                        std::to_string(r) + "*h_" + std::to_string(b) + " with " +
                        std::to_string(b) + " = " + std::to_string(r) + "*" + std::to_string(a) +
                        " mod " + std::to_string(M) + " for prime " + primes[i].get_str());
            }
    }
    return ExponentialLDS{M, std::move(primes), std::move(tables)};
}

// ---- Lucas and Lehmer -------------------------------------------------------

inline std::vector<Int> lucas_terms(const Int& P, const Int& Q, std::size_t count) {
    if (P * P == 4 * Q)
        throw invalid_argument_error("degenerate parameters: discriminant P^2 - 4Q = 0");
    std::vector<Int> u(std::max<std::size_t>(count, 2));
    u[0] = 0;
    u[1] = 1;
    for (std::size_t n = 2; n < count; ++n) u[n] = P * u[n - 1] - Q * u[n - 2];
    u.resize(count);
    return u;
}

inline Int lucas(const Int& P, const Int& Q, unsigned long n) {
    return lucas_terms(P, Q, n + 1)[n];
}

// Lehmer parameters: alpha, beta = (sqrt(r) +- sqrt(s))/2 with r, s
// squarefree and s = r - 4d.  The exposed sequence is the square
// L_n(alpha,beta)^2, an integer LDS of order 3 with characteristic roots
// alpha^2, beta^2, alpha*beta.
inline void lehmer_validate(const Int& r, const Int& s) {
    if (r == 0 || s == 0 || r == s)
        throw invalid_argument_error("degenerate parameters: need r != s, both nonzero");
    if (!is_squarefree(r) || !is_squarefree(s))
        throw invalid_argument_error("degenerate parameters: r, s must be squarefree");
    Int diff = r - s;
    if (diff % 4 != 0)
        throw invalid_argument_error("degenerate parameters: 4 must divide r - s");
}

inline std::vector<Int> lehmer_terms(const Int& r, const Int& s, std::size_t count) {
    lehmer_validate(r, s);
    Int d = (r - s) / 4;                 // alpha*beta
    Int T = (r + s) / 2;                 // alpha^2 + beta^2
    std::vector<Int> w(std::max<std::size_t>(count, 3));
    w[0] = 0;
    w[1] = 1;
    w[2] = r;
    // roots alpha^2, beta^2, alpha*beta: x^3 - (T+d)x^2 + d(T+d)x - d^3
    for (std::size_t n = 3; n < count; ++n)
        w[n] = (T + d) * w[n - 1] - d * (T + d) * w[n - 2] + d * d * d * w[n - 3];
    w.resize(count);
    return w;
}

inline Int lehmer(const Int& r, const Int& s, unsigned long n) {
    return lehmer_terms(r, s, n + 1)[n];
}

// ---- polynomially generated -------------------------------------------------

// u_n = (1/q^{deg f * (n - d)}) * prod_{sigma in H} [F_n(alpha,beta) /
// F_d(alpha,beta)]^sigma with d = (n, M), where F_k(x,y) = prod_rho
// (x^k - rho y^k)^{mult} homogenizes the division-closed f, and H is
// {identity} or {identity, quadratic conjugation}.
struct PolyGenSpec {
    UnityRootMultiset f;  // division-closed, f(0) != 0
    unsigned long M = 1;
    AlgNum alpha, beta;
    bool conjugate_pair = false;
    Int q = 1;

    void validate() const {
        if (f.t_power() != 0) throw invalid_argument_error("polygen f must have f(0) != 0");
        if (!is_divisibility_closed(f))
            throw invalid_argument_error("polygen f must be division-closed");
        if (alpha.is_zero() || beta.is_zero())
            throw invalid_argument_error("evaluation pair must be nonzero");
        AlgNum gamma = alpha * beta.inverse();
        if (gamma.is_root_of_unity())
            throw invalid_argument_error("alpha/beta must not be a root of unity");
        if (q <= 0) throw invalid_argument_error("q must be positive");
    }
};

inline AlgNum polygen_pair_value(const UnityRootMultiset& f, const AlgNum& alpha,
                                 const AlgNum& beta, unsigned long k) {
    AlgNum an = alpha.pow(Int(static_cast<long>(k)));
    AlgNum bn = beta.pow(Int(static_cast<long>(k)));
    AlgNum acc(Rat(1));
    for (auto& [rho, m] : f.roots())
        acc = acc * (an - rho.value() * bn).pow(Int(static_cast<long>(m)));
    return acc;
}

inline Int polygen_eval(const PolyGenSpec& spec, unsigned long n) {
    spec.validate();
    if (n == 0) throw invalid_argument_error("polygen_eval needs n >= 1");
    unsigned long d = std::gcd(n, spec.M);
    AlgNum num = polygen_pair_value(spec.f, spec.alpha, spec.beta, n);
    AlgNum den = polygen_pair_value(spec.f, spec.alpha, spec.beta, d);
    AlgNum val = num * den.inverse();
    if (spec.conjugate_pair) {
        AlgNum cnum = polygen_pair_value(spec.f, spec.alpha.quad_conj(), spec.beta.quad_conj(), n);
        AlgNum cden = polygen_pair_value(spec.f, spec.alpha.quad_conj(), spec.beta.quad_conj(), d);
        val = val * cnum * cden.inverse();
    }
    unsigned long degn = spec.f.degree() * (n - d);
    if (spec.q != 1) val = val * AlgNum(Rat(Int(1), int_pow(spec.q, degn)));
    if (!val.is_rational() || val.as_rat().get_den() != 1)
        throw non_integral_result_error("polygen value at n=" + std::to_string(n) +
                                        " is not a rational integer: " + val.to_string());
    return val.as_rat().get_num();
}

// ---- divisor-indexed combination ---------------------------------------------

// u_n = prod_{d | (M, n)} v^{(d)}_{n/d}; divisors without a part contribute 1.
inline IntSeq combine_by_divisors(unsigned long M, std::map<unsigned long, IntSeq> parts) {
    if (M == 0) throw invalid_argument_error("period must be positive");
    for (auto& [d, part] : parts)
        if (M % d != 0)
            throw invalid_argument_error("part key " + std::to_string(d) + " does not divide M");
    return [M, parts = std::move(parts)](unsigned long n) {
        Int acc = 1;
        unsigned long g = n == 0 ? M : std::gcd(M, n);
        for (auto& [d, part] : parts)
            if (g % d == 0) acc *= part(n / d);
        return acc;
    };
}

// ---- Guy-Williams order-two Lucas sequences ----------------------------------

// u_n = (alpha^n + delta^n - beta^n - gamma^n) / (alpha + delta - beta - gamma)
// with alpha*delta = beta*gamma.
inline ExpPoly guy_williams(const AlgNum& alpha, const AlgNum& delta, const AlgNum& beta,
                            const AlgNum& gamma) {
    if (alpha * delta != beta * gamma)
        throw invalid_argument_error("constraint violation: alpha*delta != beta*gamma");
    AlgNum D = alpha + delta - beta - gamma;
    if (D.is_zero()) throw invalid_argument_error("constraint violation: zero denominator");
    AlgNum c = D.inverse();
    ExpPoly ep;
    ep.terms.push_back({{c}, alpha});
    ep.terms.push_back({{c}, delta});
    ep.terms.push_back({{-c}, beta});
    ep.terms.push_back({{-c}, gamma});
    ep.normalize();
    return ep;
}

// Right-hand side of the two-sided identity:
// alpha^{-(n-1)} * (alpha^n - beta^n)/(alpha - beta) * (alpha^n - gamma^n)/(alpha - gamma).
inline AlgNum guy_williams_rhs(const AlgNum& alpha, const AlgNum& beta, const AlgNum& gamma,
                               unsigned long n) {
    AlgNum an = alpha.pow(Int(static_cast<long>(n)));
    AlgNum lhs1 = (an - beta.pow(Int(static_cast<long>(n)))) * (alpha - beta).inverse();
    AlgNum lhs2 = (an - gamma.pow(Int(static_cast<long>(n)))) * (alpha - gamma).inverse();
    return alpha.pow(Int(static_cast<long>(n) - 1)).inverse() * lhs1 * lhs2;
}

// ---- closed forms for the families (used by the decomposition tests) ---------

// Build an ExpPoly for u_n = sum_a 1_{n = a mod M} * poly_a(n) * base_a^n,
// with classes indexed a = 1..M (a = M meaning n = 0 mod M).
inline ExpPoly expoly_from_classes(unsigned long M,
                                   const std::vector<std::pair<APoly, AlgNum>>& classes) {
    if (classes.size() != M) throw invalid_argument_error("need one class per residue");
    ExpPoly ep;
    Rat invM(1, static_cast<long>(M));
    for (unsigned long a = 1; a <= M; ++a) {
        const auto& [poly, base] = classes[a - 1];
        if (ap_is_zero(poly)) continue;
        for (unsigned long j = 0; j < M; ++j) {
            AlgNum w = AlgNum::zeta(M, -static_cast<long>(j * a)) * invM;
            ep.terms.push_back({ap_scale(poly, w), base * AlgNum::zeta(M, static_cast<long>(j))});
        }
    }
    ep.normalize();
    return ep;
}

inline ExpPoly to_expoly(const PeriodicLDS& p) {
    std::vector<std::pair<APoly, AlgNum>> classes;
    for (unsigned long a = 1; a <= p.M; ++a)
        classes.push_back({{AlgNum(Rat(p.eval(a)))}, AlgNum(Rat(1))});
    return expoly_from_classes(p.M, classes);
}

inline ExpPoly to_expoly(const PowerLDS& p) {
    std::vector<std::pair<APoly, AlgNum>> classes;
    for (unsigned long a = 1; a <= p.M; ++a) {
        unsigned long d = std::gcd(a, p.M);
        unsigned long e = p.exps.at(d);
        // (n/d)^e as a polynomial in n
        APoly poly = {AlgNum(Rat(1))};
        APoly lin = {AlgNum(Rat(0)), AlgNum(Rat(1, static_cast<long>(d)))};
        for (unsigned long i = 0; i < e; ++i) poly = ap_mul(poly, lin);
        classes.push_back({poly, AlgNum(Rat(1))});
    }
    return expoly_from_classes(p.M, classes);
}

inline ExpPoly to_expoly(const ExponentialLDS& p) {
    std::vector<std::pair<APoly, AlgNum>> classes;
    for (unsigned long a = 1; a <= p.M; ++a) {
        // u_{a+kM} = prod p_i^{k h_{i,a}} = (prod p_i^{h_{i,a}/M})^n * prod p_i^{-a h_{i,a}/M}
        AlgNum base(Rat(1));
        AlgNum coeff(Rat(1));
        for (std::size_t i = 0; i < p.primes.size(); ++i) {
            unsigned long h = p.tables[i][a - 1];
            auto frac_pow = [&](unsigned long num) -> AlgNum {
                // p^{num/M} when it lands in a supported field
                if (num % p.M == 0) return AlgNum(Rat(p.primes[i])).pow(Int(num / p.M));
                if ((2 * num) % p.M == 0) {
                    unsigned long twice = 2 * num / p.M;
                    AlgNum whole = AlgNum(Rat(p.primes[i])).pow(Int(twice / 2));
                    if (twice % 2) whole = whole * AlgNum::sqrt_of(static_cast<long>(p.primes[i].get_si()));
                    return whole;
                }
                throw unsupported_field_error(
                    "exponential class exponent h/M outside half-integers");
            };
            base = base * frac_pow(h);
            coeff = coeff * frac_pow(h * a).inverse();
        }
        classes.push_back({{coeff}, base});
    }
    return expoly_from_classes(p.M, classes);
}

inline ExpPoly lucas_expoly(const Int& P, const Int& Q) {
    RecurrenceSpec spec{{P, -Q}, {Int(0), Int(1)}};
    return recurrence_to_closed_form(spec);
}

inline ExpPoly lehmer_expoly(const Int& r, const Int& s) {
    lehmer_validate(r, s);
    Int d = (r - s) / 4;
    Int T = (r + s) / 2;
    RecurrenceSpec spec{{T + d, -d * (T + d), d * d * d}, {Int(0), Int(1), r}};
    return recurrence_to_closed_form(spec);
}

}  // namespace lds

#endif
