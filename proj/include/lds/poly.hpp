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

#ifndef LDS_POLY_HPP
#define LDS_POLY_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "lds/rational.hpp"

namespace lds {

// Dense univariate polynomial over Q.  Canonical form: no leading zero
// coefficient; the zero polynomial has an empty coefficient vector and
// degree() == -1.
class UniPolyQ {
   public:
    UniPolyQ() = default;
    explicit UniPolyQ(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit UniPolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPolyQ zero() { return UniPolyQ(); }
    static UniPolyQ one() { return UniPolyQ(Rat(1)); }
    static UniPolyQ x() { return monomial(1, Rat(1)); }
    static UniPolyQ monomial(std::size_t deg, const Rat& c) {
        std::vector<Rat> v(deg + 1, Rat(0));
        v[deg] = c;
        return UniPolyQ(std::move(v));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const UniPolyQ& o) const { return c_ == o.c_; }
    bool operator!=(const UniPolyQ& o) const { return !(*this == o); }

    UniPolyQ operator-() const {
        UniPolyQ r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    UniPolyQ operator+(const UniPolyQ& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
        return UniPolyQ(std::move(v));
    }
    UniPolyQ operator-(const UniPolyQ& o) const { return *this + (-o); }

    UniPolyQ operator*(const UniPolyQ& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
        return UniPolyQ(std::move(v));
    }

    UniPolyQ operator*(const Rat& s) const {
        if (s == 0) return {};
        UniPolyQ r(*this);
        for (auto& c : r.c_) c *= s;
        return r;
    }

    // Euclidean division; throws on zero divisor.
    std::pair<UniPolyQ, UniPolyQ> divmod(const UniPolyQ& d) const {
        if (d.is_zero()) throw division_by_zero_error("polynomial division by zero");
        UniPolyQ q, r(*this);
        std::vector<Rat> qc(r.c_.size() > d.c_.size() ? r.c_.size() - d.c_.size() + 1 : 1, Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.lead() / d.lead();
            std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            qc[shift] += f;
            for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + shift] -= f * d.c_[i];
            r.trim();
        }
        return {UniPolyQ(std::move(qc)), r};
    }

    UniPolyQ operator/(const UniPolyQ& d) const { return divmod(d).first; }
    UniPolyQ operator%(const UniPolyQ& d) const { return divmod(d).second; }

    bool divisible_by(const UniPolyQ& d) const { return divmod(d).second.is_zero(); }

    UniPolyQ monic() const {
        if (is_zero()) return {};
        return *this * (Rat(1) / lead());
    }

    UniPolyQ derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return UniPolyQ(std::move(v));
    }

    // f(x^k)
    UniPolyQ inflate(std::size_t k) const {
        if (is_zero() || k == 0) return k == 0 ? UniPolyQ(eval(Rat(1))) : UniPolyQ();
        std::vector<Rat> v(static_cast<std::size_t>(degree()) * k + 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
        return UniPolyQ(std::move(v));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    template <typename T>
    T eval_at(const T& x, const T& one) const {
        T acc = one * Rat(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + one * (*it);
        return acc;
    }

    UniPolyQ pow(unsigned long e) const {
        UniPolyQ r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            Rat c = coeff(static_cast<std::size_t>(i));
            if (c == 0) continue;
            if (!first) os << (sgn(c) < 0 ? " - " : " + ");
            else if (sgn(c) < 0) os << "-";
            Rat a = abs(c);
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) {
                if (a != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline UniPolyQ operator*(const Rat& s, const UniPolyQ& p) { return p * s; }

inline std::ostream& operator<<(std::ostream& os, const UniPolyQ& p) { return os << p.to_string(); }

// gcd is returned monic (by convention gcd(f,0) = monic f).
inline UniPolyQ poly_gcd(UniPolyQ a, UniPolyQ b) {
    if (a.is_zero() && b.is_zero())
        throw invalid_argument_error("poly_gcd of two zero polynomials");
    while (!b.is_zero()) {
        UniPolyQ r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPolyQ poly_lcm(const UniPolyQ& a, const UniPolyQ& b) {
    if (a.is_zero() || b.is_zero())
        throw invalid_argument_error("poly_lcm needs nonzero polynomials");
    return ((a * b) / poly_gcd(a, b)).monic();
}

// m-th cyclotomic polynomial, computed by dividing x^m - 1 by the earlier
// ones; cached since callers ask for the same small indices constantly.
inline const UniPolyQ& cyclotomic(unsigned long m) {
    if (m == 0) throw invalid_argument_error("cyclotomic(0)");
    static std::map<unsigned long, UniPolyQ> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<Rat> xm(m + 1, Rat(0));
    xm[0] = -1;
    xm[m] = 1;
    UniPolyQ f{std::vector<Rat>(xm)};
    for (unsigned long d : divisors_of(m))
        if (d < m) f = f / cyclotomic(d);
    return cache.emplace(m, std::move(f)).first->second;
}

}  // namespace lds

#endif
