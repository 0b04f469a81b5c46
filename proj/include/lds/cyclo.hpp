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

#ifndef LDS_CYCLO_HPP
#define LDS_CYCLO_HPP

#include <complex>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "lds/poly.hpp"
#include "lds/rational.hpp"

namespace lds {

namespace detail {

// Per-order data for Q(zeta_n): phi(n) and the reduction of every power
// zeta^j (j < max(n, 2*phi)) to the power basis 1, zeta, ..., zeta^{phi-1}.
struct CycloField {
    unsigned long n = 1;
    unsigned long phi = 1;
    std::vector<std::vector<Rat>> power;  // power[j] = coeffs of zeta^j

    explicit CycloField(unsigned long order) : n(order), phi(euler_phi(order)) {
        const UniPolyQ& f = cyclotomic(n);
        std::size_t count = std::max<std::size_t>(n, 2 * phi);
        power.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            if (j < phi) {
                std::vector<Rat> e(phi, Rat(0));
                e[j] = 1;
                power.push_back(std::move(e));
            } else {
                // zeta^j = zeta * zeta^{j-1}, reduced by the monic Phi_n.
                std::vector<Rat> v(phi + 1, Rat(0));
                for (std::size_t i = 0; i < phi; ++i) v[i + 1] = power[j - 1][i];
                Rat lead = v[phi];
                std::vector<Rat> e(phi, Rat(0));
                for (std::size_t i = 0; i < phi; ++i)
                    e[i] = v[i] - lead * f.coeff(i);
                power.push_back(std::move(e));
            }
        }
    }
};

inline const CycloField& cyclo_field(unsigned long n) {
    static std::map<unsigned long, CycloField> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, CycloField(n)).first;
    return it->second;
}

// Solve A x = b exactly (A given column-wise); empty result if inconsistent.
inline bool solve_columns(const std::vector<std::vector<Rat>>& cols,
                          std::vector<Rat> b, std::vector<Rat>& out) {
    std::size_t rows = b.size(), ncols = cols.size();
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(ncols + 1, Rat(0)));
    for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
    for (std::size_t i = 0; i < rows; ++i) m[i][ncols] = b[i];

    std::vector<long> pivot_col(rows, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[rank]);
        Rat inv = Rat(1) / m[rank][col];
        for (auto& v : m[rank]) v *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = col; c <= ncols; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_col[rank] = static_cast<long>(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (m[r][ncols] != 0) return false;
    out.assign(ncols, Rat(0));
    for (std::size_t r = 0; r < rank; ++r) out[static_cast<std::size_t>(pivot_col[r])] = m[r][ncols];
    return true;
}

}  // namespace detail

// An element of Q(zeta_n), stored on the power basis modulo Phi_n and kept
// at the minimal cyclotomic order containing it (never n = 2 mod 4).
class Cyclo {
   public:
    Cyclo() : n_(1), c_(1, Rat(0)) {}
    explicit Cyclo(const Rat& r) : n_(1), c_(1, r) { c_[0].canonicalize(); }
    Cyclo(unsigned long n, std::vector<Rat> coeffs) : n_(n) {
        for (auto& c : coeffs) c.canonicalize();
        const auto& F = detail::cyclo_field(n_);
        if (coeffs.size() <= F.phi) {
            c_ = std::move(coeffs);
            c_.resize(F.phi, Rat(0));
        } else {
            // Fold an unreduced power vector through the basis table
            // (zeta^n = 1, so exponents reduce mod n first).
            c_.assign(F.phi, Rat(0));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (coeffs[i] == 0) continue;
                const auto& pw = F.power[i % n_];
                for (std::size_t k = 0; k < F.phi; ++k) c_[k] += coeffs[i] * pw[k];
            }
        }
        reduce();
    }

    // zeta_n^j
    static Cyclo zeta(unsigned long n, long j = 1) {
        if (n == 0) throw invalid_argument_error("zeta order must be positive");
        long jj = j % static_cast<long>(n);
        if (jj < 0) jj += static_cast<long>(n);
        const auto& F = detail::cyclo_field(n);
        return Cyclo(n, F.power[static_cast<std::size_t>(jj)]);
    }

    unsigned long order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto& c : c_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const { return n_ == 1; }
    Rat as_rat() const {
        if (!is_rational()) throw invalid_argument_error("not a rational cyclotomic value");
        return c_[0];
    }

    bool operator==(const Cyclo& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo operator-() const {
        Cyclo r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        unsigned long n = join_order(a.n_, b.n_);
        std::vector<Rat> va = a.lifted(n), vb = b.lifted(n);
        for (std::size_t i = 0; i < va.size(); ++i) va[i] += vb[i];
        return Cyclo(n, std::move(va));
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        unsigned long n = join_order(a.n_, b.n_);
        const auto& F = detail::cyclo_field(n);
        std::vector<Rat> va = a.lifted(n), vb = b.lifted(n);
        std::vector<Rat> acc(F.phi, Rat(0));
        for (std::size_t i = 0; i < va.size(); ++i) {
            if (va[i] == 0) continue;
            for (std::size_t j = 0; j < vb.size(); ++j) {
                if (vb[j] == 0) continue;
                Rat f = va[i] * vb[j];
                const auto& pw = F.power[i + j];
                for (std::size_t k = 0; k < F.phi; ++k) acc[k] += f * pw[k];
            }
        }
        return Cyclo(n, std::move(acc));
    }

    friend Cyclo operator*(const Cyclo& a, const Rat& s) {
        Cyclo r(a);
        for (auto& c : r.c_) c *= s;
        if (s == 0) return Cyclo(Rat(0));
        return r;
    }
    friend Cyclo operator*(const Rat& s, const Cyclo& a) { return a * s; }

    Cyclo inverse() const {
        if (is_zero()) throw division_by_zero_error("inverse of zero");
        if (n_ == 1) return Cyclo(Rat(1) / c_[0]);
        // Extended Euclid against Phi_n over Q: u*rep + v*Phi = 1.
        UniPolyQ rep{std::vector<Rat>(c_)};
        UniPolyQ a = cyclotomic(n_), b = rep;
        UniPolyQ s0 = UniPolyQ::zero(), s1 = UniPolyQ::one();
        while (!b.is_zero()) {
            auto [q, r] = a.divmod(b);
            a = std::move(b);
            b = std::move(r);
            UniPolyQ s2 = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // a = gcd = nonzero constant (Phi_n irreducible over Q), s0 tracks rep.
        UniPolyQ inv = s0 * (Rat(1) / a.lead());
        std::vector<Rat> v(detail::cyclo_field(n_).phi, Rat(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = inv.coeff(i);
        return Cyclo(n_, std::move(v));
    }

    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    // Galois substitution zeta -> zeta^t, gcd(t, n) = 1.
    Cyclo galois(long t) const {
        long n = static_cast<long>(n_);
        long tt = ((t % n) + n) % n;
        if (std::gcd(tt, n) != 1) throw invalid_argument_error("galois exponent not coprime to order");
        const auto& F = detail::cyclo_field(n_);
        std::vector<Rat> acc(F.phi, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const auto& pw = F.power[static_cast<std::size_t>((i * tt) % n_)];
            for (std::size_t k = 0; k < F.phi; ++k) acc[k] += c_[i] * pw[k];
        }
        return Cyclo(n_, std::move(acc));
    }

    Cyclo complex_conj() const { return n_ == 1 ? *this : galois(static_cast<long>(n_) - 1); }

    // Lift to Q(zeta_n) and apply zeta_n -> zeta_n^t there.
    Cyclo galois_at(unsigned long n, long t) const {
        long nn = static_cast<long>(n);
        long tt = ((t % nn) + nn) % nn;
        if (std::gcd(tt, nn) != 1)
            throw invalid_argument_error("galois exponent not coprime to order");
        const auto& F = detail::cyclo_field(n);
        std::vector<Rat> lift = lifted(n);
        std::vector<Rat> acc(F.phi, Rat(0));
        for (std::size_t i = 0; i < lift.size(); ++i) {
            if (lift[i] == 0) continue;
            const auto& pw = F.power[(i * static_cast<unsigned long>(tt)) % n];
            for (std::size_t k = 0; k < F.phi; ++k) acc[k] += lift[i] * pw[k];
        }
        return Cyclo(n, std::move(acc));
    }

    std::vector<Cyclo> conjugates() const {
        std::vector<Cyclo> out;
        for (unsigned long t = 1; t <= n_; ++t)
            if (std::gcd(t, n_) == 1) out.push_back(galois(static_cast<long>(t)));
        return out;
    }

    Cyclo pow(const Int& e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo r(Rat(1)), b = *this;
        Int k = e;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    std::vector<Rat> lifted(unsigned long n) const {
        const auto& F = detail::cyclo_field(n);
        if (n == n_) {
            std::vector<Rat> v(c_);
            v.resize(F.phi, Rat(0));
            return v;
        }
        unsigned long step = n / n_;
        std::vector<Rat> acc(F.phi, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const auto& pw = F.power[i * step];
            for (std::size_t k = 0; k < F.phi; ++k) acc[k] += c_[i] * pw[k];
        }
        return acc;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                         static_cast<double>(n_);
            acc += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

    std::string to_string() const {
        if (n_ == 1) return c_[0].get_str();
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rat a = abs(c_[i]);
            if (!first) os << (sgn(c_[i]) < 0 ? "-" : "+");
            else if (sgn(c_[i]) < 0) os << "-";
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) {
                if (a != 1) os << "*";
                os << "z" << n_;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

    static unsigned long join_order(unsigned long a, unsigned long b) {
        return std::lcm(a, b);
    }

   private:
    // Canonicalize: drop to the smallest cyclotomic subfield that contains
    // the value, avoiding orders = 2 mod 4.
    void reduce() {
        bool changed = true;
        while (changed && n_ > 1) {
            changed = false;
            unsigned long n = n_;
            for (unsigned long p = 2; p <= n; ++p) {
                if (n % p != 0) continue;
                bool prime = true;
                for (unsigned long q = 2; q * q <= p; ++q)
                    if (p % q == 0) { prime = false; break; }
                if (!prime) continue;
                unsigned long m = n / p;
                if (try_descend(m)) {
                    changed = true;
                    break;
                }
            }
        }
        if (n_ % 4 == 2) {
            // Q(zeta_{2m}) = Q(zeta_m) for odd m; descent above should have
            // caught it, but keep the invariant explicit.
            try_descend(n_ / 2);
        }
    }

    bool try_descend(unsigned long m) {
        if (m == 0) return false;
        if (m % 4 == 2) m /= 2;
        if (m == n_) return false;
        const auto& F = detail::cyclo_field(n_);
        const auto& G = detail::cyclo_field(m);
        unsigned long step = n_ / m;
        std::vector<std::vector<Rat>> cols;
        cols.reserve(G.phi);
        for (std::size_t i = 0; i < G.phi; ++i) cols.push_back(F.power[i * step]);
        std::vector<Rat> sol;
        if (!detail::solve_columns(cols, c_, sol)) return false;
        n_ = m;
        c_ = std::move(sol);
        return true;
    }

    unsigned long n_;
    std::vector<Rat> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyclo& z) { return os << z.to_string(); }

// sqrt(d) for squarefree d as an explicit element of Q(zeta_{|disc|}),
// assembled multiplicatively from quadratic Gauss sums.  The embedding is
// the principal one: positive real for d > 0, positive imaginary for d < 0.
inline Cyclo gauss_sqrt(long d) {
    if (d == 0) throw invalid_argument_error("sqrt of zero");
    Cyclo acc{Rat(1)};
    auto legendre = [](long a, long p) {
        long r = a % p;
        if (r < 0) r += p;
        for (long x = 0; x < p; ++x)
            if ((x * x) % p == r) return r == 0 ? 0 : 1;
        return -1;
    };
    long rest = d < 0 ? -d : d;
    if (d < 0) acc = acc * Cyclo::zeta(4, 1);  // i
    if (rest % 2 == 0) {
        rest /= 2;
        acc = acc * (Cyclo::zeta(8, 1) + Cyclo::zeta(8, 7));  // sqrt(2)
    }
    for (long p = 3; p <= rest; p += 2) {
        if (rest % p != 0) continue;
        rest /= p;
        Cyclo g{Rat(0)};
        for (long k = 1; k < p; ++k)
            g = g + Cyclo::zeta(static_cast<unsigned long>(p), k) * Rat(legendre(k, p));
        if (p % 4 == 1) {
            acc = acc * g;  // g = sqrt(p)
        } else {
            // g = i*sqrt(p): divide out the i.
            acc = acc * g * Cyclo::zeta(4, 3);
        }
    }
    return acc;
}

}  // namespace lds

#endif
