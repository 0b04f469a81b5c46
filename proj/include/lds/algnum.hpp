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

#ifndef LDS_ALGNUM_HPP
#define LDS_ALGNUM_HPP

#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "lds/cyclo.hpp"

namespace lds {

// Exact arithmetic in Q(sqrt(d), zeta_N): value = a + b*sqrt(d) with
// a, b in Q(zeta_N) and d squarefree.  Whenever sqrt(d) already lies in the
// cyclotomic part (|disc(d)| divides N) it is absorbed via a Gauss sum, so
// the representation is zero-divisor free and equality is plain comparison
// of canonical forms.  d = 1 marks "no quadratic part".
class AlgNum {
   public:
    // Cyclotomic orders are capped; raised絶only through with_max_order.
    static unsigned long max_order() { return max_order_ref(); }
    static void set_max_order(unsigned long n) { max_order_ref() = n; }

    AlgNum() : a_(Rat(0)), b_(Rat(0)), d_(1) {}
    AlgNum(const Rat& r) : a_(r), b_(Rat(0)), d_(1) {}
    AlgNum(long v) : AlgNum(Rat(v)) {}
    explicit AlgNum(const Cyclo& c) : a_(c), b_(Rat(0)), d_(1) {}
    AlgNum(const Cyclo& a, const Cyclo& b, long d) : a_(a), b_(b), d_(d) { normalize(); }

    // a + b*sqrt(d) with rational a, b.
    static AlgNum quad(const Rat& a, const Rat& b, long d) {
        return AlgNum(Cyclo(a), Cyclo(b), d);
    }
    static AlgNum sqrt_of(long d) { return quad(Rat(0), Rat(1), d); }
    static AlgNum zeta(unsigned long n, long j = 1) { return AlgNum(Cyclo::zeta(n, j)); }

    const Cyclo& cyclo_part() const { return a_; }
    const Cyclo& quad_part() const { return b_; }
    long quad_disc() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero() && a_.is_rational(); }
    Rat as_rat() const {
        if (!is_rational()) throw invalid_argument_error("algebraic number is not rational");
        return a_.as_rat();
    }
    bool is_one() const { return b_.is_zero() && a_ == Cyclo(Rat(1)); }

    // Degree of the ambient field Q(sqrt(d), zeta_N) over Q.
    unsigned long field_degree() const {
        unsigned long deg = euler_phi(cyclo_order());
        return d_ == 1 ? deg : 2 * deg;
    }
    unsigned long cyclo_order() const {
        return Cyclo::join_order(a_.order(), b_.order());
    }

    bool operator==(const AlgNum& o) const {
        if (d_ == o.d_) return a_ == o.a_ && b_ == o.b_;
        return (*this - o).is_zero();
    }
    bool operator!=(const AlgNum& o) const { return !(*this == o); }

    AlgNum operator-() const {
        AlgNum r(*this);
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    friend AlgNum operator+(const AlgNum& x, const AlgNum& y) {
        auto [a, b, d] = unify(x, y);
        return AlgNum(a.first + b.first, a.second + b.second, d);
    }
    friend AlgNum operator-(const AlgNum& x, const AlgNum& y) { return x + (-y); }

    friend AlgNum operator*(const AlgNum& x, const AlgNum& y) {
        auto [a, b, d] = unify(x, y);
        Cyclo re = a.first * b.first + a.second * b.second * Rat(d);
        Cyclo im = a.first * b.second + a.second * b.first;
        return AlgNum(re, im, d);
    }
    friend AlgNum operator*(const AlgNum& x, const Rat& s) {
        return AlgNum(x.a_ * s, x.b_ * s, x.d_);
    }
    friend AlgNum operator*(const Rat& s, const AlgNum& x) { return x * s; }

    AlgNum inverse() const {
        if (is_zero()) throw division_by_zero_error("inverse of zero algebraic number");
        if (b_.is_zero()) return AlgNum(a_.inverse());
        // (a - b sqrt(d)) / (a^2 - d b^2); the denominator is nonzero since
        // sqrt(d) is not in Q(zeta_N) here.
        Cyclo den = a_ * a_ - b_ * b_ * Rat(d_);
        Cyclo deninv = den.inverse();
        return AlgNum(a_ * deninv, -(b_ * deninv), d_);
    }

    friend AlgNum operator/(const AlgNum& x, const AlgNum& y) { return x * y.inverse(); }

    AlgNum pow(const Int& e) const {
        if (e < 0) return inverse().pow(-e);
        AlgNum r(Rat(1)), b = *this;
        Int k = e;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }
    AlgNum pow(long e) const { return pow(Int(e)); }

    // sqrt(d) -> -sqrt(d)
    AlgNum quad_conj() const { return AlgNum(a_, -b_, d_); }

    // The image under complex conjugation in the canonical embedding
    // (zeta_N = e^{2 pi i / N}, sqrt(d) principal).
    AlgNum complex_conj() const {
        AlgNum r(a_.complex_conj(), b_.complex_conj(), d_);
        if (d_ < 0) r.b_ = -r.b_;
        return r;
    }

    // All Galois images over Q (distinct ones).
    std::vector<AlgNum> conjugates() const {
        std::vector<AlgNum> out;
        unsigned long n = cyclo_order();
        for (unsigned long t = 1; t <= n; ++t) {
            if (std::gcd(t, n) != 1) continue;
            Cyclo ga = a_.galois_at(n, static_cast<long>(t));
            Cyclo gb = b_.galois_at(n, static_cast<long>(t));
            AlgNum y(ga, gb, d_);
            AlgNum z(ga, -gb, d_);
            auto push = [&out](const AlgNum& v) {
                for (auto& w : out)
                    if (w == v) return;
                out.push_back(v);
            };
            push(y);
            if (d_ != 1) push(z);
        }
        return out;
    }

    // Product over all Galois conjugates; always rational.
    Rat norm_rational() const {
        AlgNum p(Rat(1));
        for (auto& c : conjugates()) p = p * c;
        if (!p.is_rational())
            throw invalid_argument_error("norm did not come out rational");
        return p.as_rat();
    }

    // Exact multiplicative order if this is a root of unity.  The decision
    // is complete: any root of unity in a degree-D field has order m with
    // phi(m) <= D, and every such m is tested.
    std::optional<unsigned long> is_root_of_unity() const {
        if (is_zero()) throw invalid_argument_error("is_root_of_unity(0)");
        AlgNum mag = *this * complex_conj();
        if (!mag.is_one()) return std::nullopt;
        unsigned long deg = field_degree();
        AlgNum p(Rat(1));
        for (unsigned long m = 1; m <= 6 * deg * deg + 6; ++m) {
            p = p * (*this);
            if (p.is_one()) return m;
        }
        return std::nullopt;
    }

    std::complex<double> to_complex() const {
        std::complex<double> v = a_.to_complex();
        if (!b_.is_zero()) {
            double s = std::sqrt(std::abs(static_cast<double>(d_)));
            std::complex<double> root = d_ < 0 ? std::complex<double>(0, s)
                                               : std::complex<double>(s, 0);
            v += b_.to_complex() * root;
        }
        return v;
    }

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        std::ostringstream os;
        bool have_a = !a_.is_zero();
        if (have_a) os << a_.to_string();
        std::string bs = b_.to_string();
        if (bs == "1") os << (have_a ? "+" : "") << "sqrt(" << d_ << ")";
        else if (bs == "-1") os << "-sqrt(" << d_ << ")";
        else {
            if (have_a && bs[0] != '-') os << "+";
            bool wrap = bs.find('+') != std::string::npos ||
                        bs.find('-', 1) != std::string::npos;
            if (wrap) os << "(" << bs << ")";
            else os << bs;
            os << "*sqrt(" << d_ << ")";
        }
        return os.str();
    }

   private:
    static unsigned long& max_order_ref() {
        static unsigned long n = 60;
        return n;
    }

    static long disc_conductor(long d) {
        long ad = d >= 0 ? d : -d;
        long m = ((d % 4) + 4) % 4;
        return m == 1 ? ad : 4 * ad;
    }

    void normalize() {
        if (d_ == 0) throw invalid_argument_error("quadratic discriminant must be nonzero");
        if (b_.is_zero()) {
            d_ = 1;
            b_ = Cyclo(Rat(0));
            return;
        }
        if (d_ == 1) {
            a_ = a_ + b_;
            b_ = Cyclo(Rat(0));
            return;
        }
        if (!is_squarefree(Int(d_)))
            throw invalid_argument_error("quadratic discriminant must be squarefree");
        unsigned long cond = static_cast<unsigned long>(disc_conductor(d_));
        unsigned long n = cyclo_order();
        if (n % cond == 0) {
            a_ = a_ + b_ * gauss_sqrt(d_);
            b_ = Cyclo(Rat(0));
            d_ = 1;
        }
    }

    // Bring two values into one field; raises the cyclotomic order to
    // absorb mismatched quadratic parts when that fits under the cap.
    using Parts = std::pair<Cyclo, Cyclo>;
    static std::tuple<Parts, Parts, long> unify(const AlgNum& x, const AlgNum& y) {
        long d = 1;
        AlgNum xx = x, yy = y;
        if (x.d_ == y.d_ || y.d_ == 1) d = x.d_;
        else if (x.d_ == 1) d = y.d_;
        else {
            // Distinct quadratic generators: absorb both into a common
            // cyclotomic field if the conductors fit under the cap.
            unsigned long need = std::lcm(
                std::lcm(x.cyclo_order(), y.cyclo_order()),
                std::lcm(static_cast<unsigned long>(disc_conductor(x.d_)),
                         static_cast<unsigned long>(disc_conductor(y.d_))));
            if (need > max_order())
                throw unsupported_field_error(
                    "mixing sqrt(" + std::to_string(x.d_) + ") and sqrt(" +
                    std::to_string(y.d_) + ") needs cyclotomic order " +
                    std::to_string(need) + " > cap " + std::to_string(max_order()));
            Cyclo sx = gauss_sqrt(x.d_), sy = gauss_sqrt(y.d_);
            xx = AlgNum(x.a_ + x.b_ * sx);
            yy = AlgNum(y.a_ + y.b_ * sy);
            d = 1;
        }
        return {Parts{xx.a_, xx.b_}, Parts{yy.a_, yy.b_}, d};
    }

    Cyclo a_, b_;
    long d_;
};

inline std::ostream& operator<<(std::ostream& os, const AlgNum& x) { return os << x.to_string(); }

}  // namespace lds

#endif
