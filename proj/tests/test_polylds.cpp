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

#include <catch2/catch_amalgamated.hpp>

#include "lds/polylds.hpp"

using namespace lds;

namespace {

struct Rng {
    unsigned long long s = 0x2545F4914F6CDD1DULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    unsigned long range(unsigned long lo, unsigned long hi) {
        return lo + next() % (hi - lo + 1);
    }
};

// Brute-force polynomial divisibility of the expansions.
bool expands_divide(const UnityRootMultiset& f, const UnityRootMultiset& g) {
    return ap_divisible(g.expand(), f.expand());
}

}  // namespace

TEST_CASE("lcm of root multisets: paper example") {
    UnityRootMultiset f = UnityRootMultiset::all_nth_roots(2);  // x^2-1
    UnityRootMultiset g = UnityRootMultiset::all_nth_roots(3);  // x^3-1
    UnityRootMultiset l = lcm(f, g);
    // (x+1)(x^3-1): roots -1, 1, w, w^2
    UnityRootMultiset expect = UnityRootMultiset::all_nth_roots(3);
    expect.add_root(RootFrac::make(1, 2), 1);
    CHECK(l == expect);
    CHECK(l.degree() == 4);
}

TEST_CASE("divides and product") {
    UnityRootMultiset x1;  // x - 1
    x1.add_root(RootFrac::make(0, 1), 1);
    CHECK(divides(x1, UnityRootMultiset::all_nth_roots(6)));

    UnityRootMultiset sq = product(x1, x1);
    CHECK(sq.multiplicity(RootFrac::make(0, 1)) == 2);
    CHECK(sq.degree() == 2);
}

TEST_CASE("divides agrees with polynomial division (property)") {
    Rng rng;
    for (int iter = 0; iter < 40; ++iter) {
        UnityRootMultiset f, g;
        for (int i = 0; i < 3; ++i) {
            unsigned long d = rng.range(1, 6);
            f.add_root(RootFrac::make(static_cast<long>(rng.range(0, d - 1)), d),
                       rng.range(0, 1));
            d = rng.range(1, 6);
            g.add_root(RootFrac::make(static_cast<long>(rng.range(0, d - 1)), d),
                       rng.range(0, 2));
        }
        CHECK(divides(f, g) == expands_divide(f, g));
    }
}

TEST_CASE("expand matches polynomial multiplication") {
    UnityRootMultiset f = UnityRootMultiset::all_nth_roots(4);
    APoly p = f.expand();
    // x^4 - 1
    REQUIRE(p.size() == 5);
    CHECK(p[0] == AlgNum(Rat(-1)));
    CHECK(p[1].is_zero());
    CHECK(p[2].is_zero());
    CHECK(p[3].is_zero());
    CHECK(p[4] == AlgNum(Rat(1)));
}

TEST_CASE("koshkin form") {
    // (x+1)(x^3-1) -> closed, h_2 = 1, h_3 = 1
    UnityRootMultiset f = UnityRootMultiset::all_nth_roots(3);
    f.add_root(RootFrac::make(1, 2), 1);
    auto h = koshkin_form(f);
    REQUIRE(h);
    CHECK(*h == std::map<unsigned long, unsigned long>{{2, 1}, {3, 1}});
    CHECK(from_koshkin_form(*h) == f);

    // Phi_3 is not closed; cross-check by direct division.  Note
    // Phi_3(x^2) = Phi_3 * Phi_6, so the failing pair is (1,3), not (1,2).
    UnityRootMultiset phi3;
    phi3.add_root(RootFrac::make(1, 3), 1);
    phi3.add_root(RootFrac::make(2, 3), 1);
    CHECK_FALSE(is_divisibility_closed(phi3));
    CHECK(ap_divisible(substitute_power(phi3, 2).expand(), phi3.expand()));
    CHECK_FALSE(ap_divisible(substitute_power(phi3, 3).expand(), phi3.expand()));

    // (x-1)^5 -> h_1 = 5
    UnityRootMultiset x15;
    x15.add_root(RootFrac::make(0, 1), 5);
    auto h2 = koshkin_form(x15);
    REQUIRE(h2);
    CHECK(*h2 == std::map<unsigned long, unsigned long>{{1, 5}});
    CHECK(from_koshkin_form(*h2) == x15);
}

TEST_CASE("koshkin round trip on random closed forms") {
    Rng rng;
    for (int iter = 0; iter < 30; ++iter) {
        std::map<unsigned long, unsigned long> h;
        for (int i = 0; i < 3; ++i) {
            unsigned long m = rng.range(1, 8);
            unsigned long e = rng.range(1, 3);
            if (h.count(m)) continue;
            h[m] = e;
        }
        UnityRootMultiset f = from_koshkin_form(h);
        auto back = koshkin_form(f);
        REQUIRE(back);
        CHECK(from_koshkin_form(*back) == f);
        CHECK(is_divisibility_closed(f));
        // and the defining property holds on a small grid
        for (unsigned long m = 1; m <= 6; ++m)
            for (unsigned long n = m; n <= 6; n += m) CHECK(substitution_divides(f, n, m));
    }
}

TEST_CASE("substitution divides") {
    UnityRootMultiset x1;
    x1.add_root(RootFrac::make(0, 1), 1);
    CHECK(substitution_divides(x1, 6, 2));
    CHECK(substitution_divides(x1, 12, 3));

    // u_n(t) = (t^n - 1)/(t^{(n,6)} - 1): u_2 | u_6 as polynomials
    UnityRootMultiset u2 = UnityRootMultiset::cyclotomic_quotient(2, 2);  // = 1
    UnityRootMultiset u6 = UnityRootMultiset::cyclotomic_quotient(6, 6);  // = 1
    // non-divisor indices
    UnityRootMultiset v2 = UnityRootMultiset::cyclotomic_quotient(2, std::gcd(2ul, 6ul));
    UnityRootMultiset v6 = UnityRootMultiset::cyclotomic_quotient(6, std::gcd(6ul, 6ul));
    CHECK(divides(u2, u6));
    CHECK(divides(v2, lcm(v2, v6)));

    // Lemma-style check across a range: u_m | u_n whenever m | n, n <= 24
    for (unsigned long m = 1; m <= 24; ++m)
        for (unsigned long n = m; n <= 24; n += m) {
            UnityRootMultiset um = UnityRootMultiset::cyclotomic_quotient(m, std::gcd(m, 6ul));
            UnityRootMultiset un = UnityRootMultiset::cyclotomic_quotient(n, std::gcd(n, 6ul));
            CHECK(divides(um, un));
        }

    UnityRootMultiset phi3;
    phi3.add_root(RootFrac::make(1, 3), 1);
    phi3.add_root(RootFrac::make(2, 3), 1);
    CHECK(substitution_divides(phi3, 2, 1));  // Phi_3(x^2) = Phi_3 * Phi_6
    CHECK_FALSE(substitution_divides(phi3, 3, 1));
}

TEST_CASE("general polynomial LDS in t") {
    // M = 1, h_{1,1,0} = 1: v_n = (t^n-1)/(t-1)
    CyclotomicLDSSpec spec;
    spec.M = 1;
    spec.h[{1, 1, 0}] = 1;
    for (unsigned long n = 1; n <= 10; ++n) {
        UnityRootMultiset v = general_lds_in_t(spec, n);
        CHECK(v == UnityRootMultiset::cyclotomic_quotient(n, 1));
    }
    // v_d = 1 at divisors of M
    CHECK(general_lds_in_t(spec, 1).degree() == 0);

    // invariant violation: h_{1,2,0} = 2 > h_{2,1,0} = 1 required the other way
    CyclotomicLDSSpec bad;
    bad.M = 2;
    bad.h[{2, 1, 0}] = 1;   // at d = 2
    bad.h[{1, 2, 0}] = 2;   // at d = 1 with km = 2, kj = 0: h_{2,1,0} >= h_{1,2,0} fails
    CHECK_THROWS_AS(general_lds_in_t(bad, 2), invalid_argument_error);
}

TEST_CASE("M=5 table with an extra factor on the 5|n class is division-closed") {
    // The table shape behind the period-5 example: the (t^2)-factor enters
    // only on the class of multiples of 5.  h_{5,2,0} = h_{5,3,0} =
    // h_{1,3,0} = 1 is a valid table, and v_n = (t^{3n}-1)/(t^3-1) when
    // 5 does not divide n, lcm of two quotients when it does.
    CyclotomicLDSSpec spec;
    spec.M = 5;
    spec.h[{1, 3, 0}] = 1;
    spec.h[{5, 3, 0}] = 1;
    spec.h[{5, 2, 0}] = 1;
    auto v = [&spec](unsigned long n) { return general_lds_in_t(spec, n); };
    CHECK(v(5) == lcm(UnityRootMultiset::cyclotomic_quotient(10, 10),
                      UnityRootMultiset::cyclotomic_quotient(15, 15)));
    CHECK(v(10) == lcm(UnityRootMultiset::cyclotomic_quotient(20, 10),
                       UnityRootMultiset::cyclotomic_quotient(30, 15)));
    CHECK(v(2) == UnityRootMultiset::cyclotomic_quotient(6, 3));
    for (unsigned long m = 1; m <= 20; ++m)
        for (unsigned long n = m; n <= 20; n += m) CHECK(divides(v(m), v(n)));
}

TEST_CASE("genF monotonicity for random valid tables") {
    Rng rng;
    for (int iter = 0; iter < 5; ++iter) {
        CyclotomicLDSSpec spec;
        spec.M = std::vector<unsigned long>{1, 2, 3, 4, 6}[rng.range(0, 4)];
        // A simple always-valid table: constant h on a (m, j) pattern across
        // all divisors d (h_{D,m,j} = h_{d,km,kj} only binds downward).
        unsigned long m0 = rng.range(1, 3);
        unsigned long e = rng.range(1, 2);
        for (unsigned long d : divisors_of(spec.M)) spec.h[{d, m0, 0}] = e;
        for (unsigned long n = 1; n * 2 <= 48; ++n)
            for (unsigned long k = 2; n * k <= 48; ++k)
                CHECK(divides(general_lds_in_t(spec, n), general_lds_in_t(spec, n * k)));
    }
}

TEST_CASE("binomial substitution factorization") {
    // y1 - c, m = 2 -> (y1 - sqrt(c))(y1 + sqrt(c)) over the extended field
    BinomialDescriptor B{{0, 1}, {0, 0}, AlgNum(Rat(7))};
    auto f = binomial_substitution_factor(B, 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0].c * f[1].c == AlgNum(Rat(-7)));
    CHECK((f[0].c == AlgNum::sqrt_of(7) || f[1].c == AlgNum::sqrt_of(7)));

    // x*y1 - c, m = 2: a0 = 1 not divisible by 2, no factorization
    BinomialDescriptor B2{{1, 1}, {0, 0}, AlgNum(Rat(5))};
    auto f2 = binomial_substitution_factor(B2, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].a == std::vector<long>{1, 2});

    // y1*y2 - 1, m = 3: three binomial factors with cube roots of unity
    BinomialDescriptor B3{{0, 1, 1}, {0, 0, 0}, AlgNum(Rat(1))};
    auto f3 = binomial_substitution_factor(B3, 3);
    REQUIRE(f3.size() == 3);
    AlgNum prod = f3[0].c * f3[1].c * f3[2].c;
    CHECK(prod == AlgNum(Rat(1)));

    // x^4 y1 - 3, m = 2: a0 = 4 divisible
    BinomialDescriptor B4{{4, 1}, {0, 0}, AlgNum(Rat(3))};
    auto f4 = binomial_substitution_factor(B4, 2);
    REQUIRE(f4.size() == 2);
    CHECK(f4[0].a[0] == 2);

    CHECK_THROWS_AS(binomial_substitution_factor({{1, 1}, {1, 0}, AlgNum(Rat(1))}, 2),
                    invalid_argument_error);
}

TEST_CASE("binomial substitution factors expand to B(x, y^m)") {
    // verify via a tiny monomial-map expansion
    auto expand_product = [](const std::vector<BinomialDescriptor>& fs) {
        std::map<std::vector<long>, AlgNum> poly;
        poly[std::vector<long>(fs[0].a.size(), 0)] = AlgNum(Rat(1));
        for (auto& f : fs) {
            std::map<std::vector<long>, AlgNum> next;
            for (auto& [mono, coef] : poly) {
                std::vector<long> m1 = mono, m2 = mono;
                for (std::size_t i = 0; i < mono.size(); ++i) {
                    m1[i] += f.a[i];
                    m2[i] += f.b[i];
                }
                auto add = [&next](const std::vector<long>& k, const AlgNum& v) {
                    auto it = next.find(k);
                    if (it == next.end()) next[k] = v;
                    else it->second = it->second + v;
                };
                add(m1, coef);
                add(m2, coef * (-f.c));
            }
            poly = std::move(next);
        }
        for (auto it = poly.begin(); it != poly.end();)
            it = it->second.is_zero() ? poly.erase(it) : std::next(it);
        return poly;
    };

    std::vector<std::pair<BinomialDescriptor, unsigned long>> cases = {
        {{{0, 1}, {0, 0}, AlgNum(Rat(7))}, 2},
        {{{0, 1, 1}, {0, 0, 0}, AlgNum(Rat(1))}, 3},
        {{{4, 1}, {0, 0}, AlgNum(Rat(3))}, 2},
        {{{0, 2, 0}, {0, 0, 3}, AlgNum(Rat(4))}, 2},
    };
    for (auto& [B, m] : cases) {
        auto factors = binomial_substitution_factor(B, m);
        BinomialDescriptor sub = B;
        for (std::size_t i = 1; i < sub.a.size(); ++i) {
            sub.a[i] *= static_cast<long>(m);
            sub.b[i] *= static_cast<long>(m);
        }
        auto lhs = expand_product(factors);
        auto rhs = expand_product({sub});
        CHECK(lhs == rhs);
    }
}
