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

#ifndef LDS_RATIONAL_HPP
#define LDS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lds {

// Arbitrary-precision integers and rationals. mpq_class keeps fractions in
// lowest terms with positive denominator, which is exactly the canonical
// form we promise everywhere.
using Int = mpz_class;
using Rat = mpq_class;

struct invalid_argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct division_by_zero_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_field_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct dependence_undecided_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long ae = e < 0 ? -static_cast<unsigned long>(e) : e;
    mpz_pow_ui(r.get_num_mpz_t(), a.get_num().get_mpz_t(), ae);
    mpz_pow_ui(r.get_den_mpz_t(), a.get_den().get_mpz_t(), ae);
    if (e < 0) {
        if (a == 0) throw division_by_zero_error("0 cannot be raised to a negative power");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

inline bool divides(const Int& m, const Int& n) {
    // Ideal-theoretic convention: everything divides 0, only 0 "divides" 0
    // among multiples of 0.
    if (m == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t()) != 0;
}

// v_p(n) for n != 0.
inline unsigned long int_valuation(Int n, const Int& p) {
    if (n == 0) throw invalid_argument_error("valuation of zero");
    unsigned long v = 0;
    Int q, r;
    for (;;) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

// v_p extended to rationals: v_p(a/b) = v_p(a) - v_p(b).
inline long rat_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw invalid_argument_error("valuation of zero");
    return static_cast<long>(int_valuation(x.get_num(), p)) -
           static_cast<long>(int_valuation(x.get_den(), p));
}

inline std::vector<unsigned long> divisors_of(unsigned long n) {
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline int mobius(unsigned long n) {
    int result = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Prime factorization by trial division plus Pollard rho; inputs at desk
// scale (gcds of sequence values etc.) keep this cheap.
namespace detail {

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEUL);
    for (;;) {
        Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = int_gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, unsigned long>& out) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++out[n];
        return;
    }
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul}) {
        while (n % p == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

inline std::map<Int, unsigned long> factorize(const Int& n) {
    if (n == 0) throw invalid_argument_error("factorize(0)");
    std::map<Int, unsigned long> out;
    Int m = n < 0 ? Int(-n) : n;
    detail::factor_into(m, out);
    return out;
}

inline bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Signed prime-exponent vector of a nonzero rational: sign and sparse map
// prime -> exponent.  The exact backbone of every multiplicative-dependence
// decision over Q.
struct RatExponents {
    int sign = 1;
    std::map<Int, long> exps;
};

inline RatExponents rat_exponents(const Rat& x) {
    if (x == 0) throw invalid_argument_error("rat_exponents(0)");
    RatExponents r;
    r.sign = sgn(x) < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(x.get_num())) r.exps[p] += static_cast<long>(e);
    for (auto& [p, e] : factorize(x.get_den())) r.exps[p] -= static_cast<long>(e);
    for (auto it = r.exps.begin(); it != r.exps.end();)
        it = it->second == 0 ? r.exps.erase(it) : std::next(it);
    return r;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw invalid_argument_error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

}  // namespace lds

#endif
