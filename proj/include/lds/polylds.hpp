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

#ifndef LDS_POLYLDS_HPP
#define LDS_POLYLDS_HPP

#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "lds/apoly.hpp"

namespace lds {

// A root of unity e^{2 pi i a/b}, keyed by the reduced fraction a/b in [0,1).
struct RootFrac {
    unsigned long num = 0;
    unsigned long den = 1;

    static RootFrac make(long a, unsigned long b) {
        if (b == 0) throw invalid_argument_error("zero denominator");
        long m = a % static_cast<long>(b);
        if (m < 0) m += static_cast<long>(b);
        unsigned long g = std::gcd(static_cast<unsigned long>(m), b);
        if (m == 0) return {0, 1};
        return {static_cast<unsigned long>(m) / g, b / g};
    }
    unsigned long order() const { return den; }
    AlgNum value() const { return AlgNum::zeta(den, static_cast<long>(num)); }
    auto operator<=>(const RootFrac&) const = default;
};

// A polynomial in C[x] whose roots are all roots of unity:
// scalar * x^{t_power} * prod (x - zeta)^{mult}.  The monomial prefactor is
// carried separately so the "monomial times product of binomials" shape
// stays explicit.
class UnityRootMultiset {
   public:
    UnityRootMultiset() = default;

    static UnityRootMultiset one() { return {}; }

    // roots of x^n - 1
    static UnityRootMultiset all_nth_roots(unsigned long n, unsigned long mult = 1) {
        UnityRootMultiset s;
        for (unsigned long a = 0; a < n; ++a) s.add_root(RootFrac::make(static_cast<long>(a), n), mult);
        return s;
    }

    // roots of (x^a - 1)/(x^b - 1) with b | a
    static UnityRootMultiset cyclotomic_quotient(unsigned long a, unsigned long b) {
        if (b == 0 || a % b != 0)
            throw invalid_argument_error("cyclotomic_quotient needs b | a");
        UnityRootMultiset s = all_nth_roots(a);
        s.subtract(all_nth_roots(b));
        return s;
    }

    void add_root(const RootFrac& r, unsigned long mult = 1) {
        if (mult) mult_[r] += mult;
    }
    void subtract(const UnityRootMultiset& o) {
        for (auto& [r, m] : o.mult_) {
            auto it = mult_.find(r);
            if (it == mult_.end() || it->second < m)
                throw invalid_argument_error("multiset subtraction went negative");
            it->second -= m;
            if (it->second == 0) mult_.erase(it);
        }
        if (t_power_ < o.t_power_) throw invalid_argument_error("monomial subtraction went negative");
        t_power_ -= o.t_power_;
        if (!o.scalar_.is_one()) scalar_ = scalar_ * o.scalar_.inverse();
    }

    const std::map<RootFrac, unsigned long>& roots() const { return mult_; }
    unsigned long multiplicity(const RootFrac& r) const {
        auto it = mult_.find(r);
        return it == mult_.end() ? 0 : it->second;
    }
    unsigned long t_power() const { return t_power_; }
    void set_t_power(unsigned long t) { t_power_ = t; }
    const AlgNum& scalar() const { return scalar_; }
    void set_scalar(const AlgNum& s) {
        if (s.is_zero()) throw invalid_argument_error("zero scalar");
        scalar_ = s;
    }

    unsigned long degree() const {
        unsigned long d = t_power_;
        for (auto& [r, m] : mult_) d += m;
        return d;
    }

    bool operator==(const UnityRootMultiset& o) const {
        return mult_ == o.mult_ && t_power_ == o.t_power_ && scalar_ == o.scalar_;
    }

    APoly expand() const {
        APoly p = {scalar_};
        for (unsigned long i = 0; i < t_power_; ++i) p = ap_mul(p, {AlgNum(Rat(0)), AlgNum(Rat(1))});
        for (auto& [r, m] : mult_) {
            APoly lin = {-r.value(), AlgNum(Rat(1))};
            for (unsigned long i = 0; i < m; ++i) p = ap_mul(p, lin);
        }
        return p;
    }

    AlgNum eval_at(const AlgNum& x) const {
        AlgNum acc = scalar_;
        if (t_power_) acc = acc * x.pow(Int(static_cast<long>(t_power_)));
        for (auto& [r, m] : mult_) acc = acc * (x - r.value()).pow(Int(static_cast<long>(m)));
        return acc;
    }

    std::string to_string() const {
        std::ostringstream os;
        if (!scalar_.is_one()) os << "(" << scalar_ << ")*";
        if (t_power_) os << "x^" << t_power_ << "*";
        for (auto& [r, m] : mult_) {
            os << "(x-e(" << r.num << "/" << r.den << "))";
            if (m > 1) os << "^" << m;
        }
        if (mult_.empty() && !t_power_) os << "1";
        return os.str();
    }

   private:
    std::map<RootFrac, unsigned long> mult_;
    unsigned long t_power_ = 0;
    AlgNum scalar_ = AlgNum(Rat(1));
};

// f | g in C[x]: pointwise multiplicity comparison (scalars are units).
inline bool divides(const UnityRootMultiset& f, const UnityRootMultiset& g) {
    if (f.t_power() > g.t_power()) return false;
    for (auto& [r, m] : f.roots())
        if (g.multiplicity(r) < m) return false;
    return true;
}

inline UnityRootMultiset lcm(const UnityRootMultiset& f, const UnityRootMultiset& g) {
    UnityRootMultiset r;
    r.set_t_power(std::max(f.t_power(), g.t_power()));
    for (auto& [root, m] : f.roots()) r.add_root(root, m);
    for (auto& [root, m] : g.roots()) {
        unsigned long have = r.multiplicity(root);
        if (m > have) r.add_root(root, m - have);
    }
    return r;
}

inline UnityRootMultiset product(const UnityRootMultiset& f, const UnityRootMultiset& g) {
    UnityRootMultiset r = f;
    r.set_t_power(f.t_power() + g.t_power());
    for (auto& [root, m] : g.roots()) r.add_root(root, m);
    if (!g.scalar().is_one()) r.set_scalar(f.scalar() * g.scalar());
    return r;
}

// Division-closedness test (f(x^m) | f(x^n) whenever m | n) and the lcm
// normal form lcm_m (x^m-1)^{h_m}.  Requires f(0) != 0, i.e. no monomial
// prefactor.  Write M_r for the common multiplicity of the primitive r-th
// roots in f; f is division-closed iff each order class is complete and
// uniform and M_r >= M_s whenever r | s.
inline std::optional<std::map<unsigned long, unsigned long>> koshkin_form(
    const UnityRootMultiset& f) {
    if (f.t_power() != 0) throw invalid_argument_error("koshkin_form needs f(0) != 0");
    std::map<unsigned long, unsigned long> class_mult;  // order -> M_r
    std::map<unsigned long, unsigned long> class_count;
    for (auto& [r, m] : f.roots()) {
        auto it = class_mult.find(r.den);
        if (it == class_mult.end()) {
            class_mult[r.den] = m;
            class_count[r.den] = 1;
        } else {
            if (it->second != m) return std::nullopt;  // non-uniform class
            ++class_count[r.den];
        }
    }
    for (auto& [order, count] : class_count)
        if (count != euler_phi(order)) return std::nullopt;  // incomplete class
    for (auto& [r, mr] : class_mult)
        for (auto& [s, ms] : class_mult)
            if (s % r == 0 && mr < ms) return std::nullopt;
    for (auto& [s, ms] : class_mult)
        for (unsigned long r : divisors_of(s))
            if (!class_mult.count(r)) return std::nullopt;  // missing divisor class
    // minimal h: keep M_s only when strictly above every proper multiple.
    std::map<unsigned long, unsigned long> h;
    for (auto& [s, ms] : class_mult) {
        unsigned long above = 0;
        for (auto& [t, mt] : class_mult)
            if (t != s && t % s == 0) above = std::max(above, mt);
        if (ms > above) h[s] = ms;
    }
    return h;
}

inline bool is_divisibility_closed(const UnityRootMultiset& f) {
    return koshkin_form(f).has_value();
}

inline UnityRootMultiset from_koshkin_form(const std::map<unsigned long, unsigned long>& h) {
    UnityRootMultiset f;
    for (auto& [m, e] : h) {
        UnityRootMultiset part = UnityRootMultiset::all_nth_roots(m, e);
        f = lcm(f, part);
    }
    return f;
}

// Roots of f(x^k): every root a/b contributes the k preimages under x^k.
inline UnityRootMultiset substitute_power(const UnityRootMultiset& f, unsigned long k) {
    if (k == 0) throw invalid_argument_error("substitute_power(0)");
    UnityRootMultiset r;
    r.set_t_power(f.t_power() * k);
    if (!f.scalar().is_one()) r.set_scalar(f.scalar());
    for (auto& [root, m] : f.roots())
        for (unsigned long j = 0; j < k; ++j)
            r.add_root(RootFrac::make(static_cast<long>(root.num + j * root.den),
                                      root.den * k),
                       m);
    return r;
}

// f(x^m) | f(x^n) decided by multiset transport (m | n assumed meaningful
// but not required).
inline bool substitution_divides(const UnityRootMultiset& f, unsigned long n, unsigned long m) {
    return divides(substitute_power(f, m), substitute_power(f, n));
}

// ---- the general polynomial LDS of period M --------------------------------

// Multiplicity table h_{d,m,j} for the lcm form
//   v_n(t) = lcm_{m,j} ( ((zeta_M^j t^m)^n - 1) / ((zeta_M^j t^m)^d - 1) )^{h_{d,m,j}}
// with d = (n, M).
struct CyclotomicLDSSpec {
    unsigned long M = 1;
    // (d, m, j) -> h, with d | M, m >= 1, 0 <= j < M/d
    std::map<std::tuple<unsigned long, unsigned long, unsigned long>, unsigned long> h;

    void validate() const {
        if (M == 0) throw invalid_argument_error("M must be positive");
        for (auto& [key, val] : h) {
            auto [d, m, j] = key;
            if (M % d != 0) throw invalid_argument_error("table key d must divide M");
            if (m == 0) throw invalid_argument_error("table key m must be positive");
            if (j >= M / d) throw invalid_argument_error("table key j must be < M/d");
        }
        // h_{D,m,j} >= h_{d,km,(kj) mod M/d} whenever d | D and k >= 1.
        for (auto& [keyD, hD] : h) {
            auto [D, m, j] = keyD;
            for (unsigned long d : divisors_of(D)) {
                for (auto& [keyd, hd] : h) {
                    auto [dd, m2, j2] = keyd;
                    if (dd != d) continue;
                    if (m2 % m != 0) continue;
                    unsigned long k = m2 / m;
                    if (k < 1) continue;
                    if ((k * j) % (M / d) != j2 % (M / d)) continue;
                    if (hD < hd)
                        throw invalid_argument_error(
                            "invariant violation: h_{" + std::to_string(D) + "," +
                            std::to_string(m) + "," + std::to_string(j) + "} = " +
                            std::to_string(hD) + " < h_{" + std::to_string(d) + "," +
                            std::to_string(m2) + "," + std::to_string(j2) + "} = " +
                            std::to_string(hd));
                }
            }
        }
    }
};

namespace detail {

// roots (in t) of (zeta_M^j t^m)^N - 1
inline UnityRootMultiset twisted_power_roots(unsigned long M, unsigned long j, unsigned long m,
                                             unsigned long N) {
    UnityRootMultiset s;
    unsigned long c = (M - (j * N) % M) % M;  // t^{mN} = zeta_M^c
    for (unsigned long i = 0; i < m * N; ++i)
        s.add_root(RootFrac::make(static_cast<long>(c + i * M), M * m * N), 1);
    return s;
}

}  // namespace detail

inline UnityRootMultiset general_lds_in_t(const CyclotomicLDSSpec& spec, unsigned long n) {
    spec.validate();
    if (n == 0) throw invalid_argument_error("n must be positive");
    unsigned long d = std::gcd(n, spec.M);
    UnityRootMultiset v;
    for (auto& [key, mult] : spec.h) {
        auto [kd, m, j] = key;
        if (kd != d || mult == 0) continue;
        UnityRootMultiset num = detail::twisted_power_roots(spec.M, j, m, n);
        num.subtract(detail::twisted_power_roots(spec.M, j, m, d));
        UnityRootMultiset powed;
        for (auto& [r, c] : num.roots()) powed.add_root(r, c * mult);
        v = lcm(v, powed);
    }
    return v;
}

// ---- binomial substitution factorization ------------------------------------

// B = x^{a0} y1^{a1}...yr^{ar} - c * x^{b0} y1^{b1}...yr^{br},
// min(a_i, b_i) = 0 for each i.
struct BinomialDescriptor {
    std::vector<long> a, b;  // index 0 is x
    AlgNum c;

    void validate() const {
        if (a.size() != b.size() || a.empty())
            throw invalid_argument_error("malformed binomial: exponent vectors");
        if (c.is_zero()) throw invalid_argument_error("malformed binomial: zero constant");
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0 || b[i] < 0 || std::min(a[i], b[i]) != 0)
                throw invalid_argument_error("malformed binomial: min(a_i, b_i) must be 0");
        }
        if (a == b) throw invalid_argument_error("malformed binomial: equal monomials");
    }
};

// Exact m-th root of an algebraic number within the supported fields:
// rational perfect powers, square roots of rationals, roots of unity.
inline AlgNum algnum_mth_root(const AlgNum& c, unsigned long m) {
    if (m == 1) return c;
    if (c.is_rational()) {
        Rat q = c.as_rat();
        // perfect m-th power?  (root taken on |num| -- mpz_root is undefined
        // for even roots of negatives)
        Int anum = abs(q.get_num());
        Int num, den;
        bool exact = mpz_root(num.get_mpz_t(), anum.get_mpz_t(), m) != 0 &&
                     mpz_root(den.get_mpz_t(), q.get_den().get_mpz_t(), m) != 0;
        if (exact) {
            Rat root(num, den);
            root.canonicalize();
            if (q >= 0) return AlgNum(root);
            if (m % 2 == 1) return AlgNum(-root);
        }
        if (m == 2) {
            // q = s^2 * f with f squarefree (signed); sqrt(q) = s * sqrt(f)
            Rat s(1);
            Int fnum = 1, fden = 1;
            for (auto& [p, e] : factorize(q.get_num())) {
                for (unsigned long i = 0; i + 1 < e; i += 2) s *= Rat(p);
                if (e % 2) fnum *= p;
            }
            for (auto& [p, e] : factorize(q.get_den())) {
                for (unsigned long i = 0; i + 1 < e; i += 2) s /= Rat(p);
                if (e % 2) {
                    fnum *= p;  // 1/p = p / p^2
                    s /= Rat(p);
                }
            }
            long f = static_cast<long>(fnum.get_si());
            if (q < 0) f = -f;
            if (f == 1) return AlgNum(s);
            return AlgNum(s) * AlgNum::sqrt_of(f);
        }
        throw unsupported_field_error("no exact " + std::to_string(m) + "-th root of " +
                                      rat_to_string(q) + " in the supported fields");
    }
    if (auto ord = c.is_root_of_unity()) {
        // c = zeta_N^j for N = *ord and some j coprime-ish: find j.
        unsigned long N = *ord;
        for (unsigned long j = 0; j < N; ++j) {
            if (AlgNum::zeta(N, static_cast<long>(j)) == c)
                return AlgNum::zeta(N * m, static_cast<long>(j));
        }
    }
    throw unsupported_field_error("no exact m-th root in the supported fields");
}

// The factorization of B(x, y1^m, ..., yr^m): m binomial factors when
// a0 = b0 = 0 or when m divides the lone x-exponent; otherwise the single
// substituted binomial.
inline std::vector<BinomialDescriptor> binomial_substitution_factor(const BinomialDescriptor& B,
                                                                    unsigned long m) {
    B.validate();
    if (m == 0) throw invalid_argument_error("m must be positive");
    auto substituted = [&]() {
        BinomialDescriptor s = B;
        for (std::size_t i = 1; i < s.a.size(); ++i) {
            s.a[i] *= static_cast<long>(m);
            s.b[i] *= static_cast<long>(m);
        }
        return s;
    };
    if (m == 1) return {B};
    bool xa = B.a[0] > 0, xb = B.b[0] > 0;
    if (xa && B.a[0] % static_cast<long>(m) != 0) return {substituted()};
    if (xb && B.b[0] % static_cast<long>(m) != 0) return {substituted()};
    AlgNum root = algnum_mth_root(B.c, m);
    std::vector<BinomialDescriptor> out;
    for (unsigned long j = 0; j < m; ++j) {
        BinomialDescriptor f = B;
        f.a[0] = xa ? B.a[0] / static_cast<long>(m) : 0;
        f.b[0] = xb ? B.b[0] / static_cast<long>(m) : 0;
        f.c = AlgNum::zeta(m, static_cast<long>(j)) * root;
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace lds

#endif
