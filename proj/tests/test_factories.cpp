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

#include "lds/factories.hpp"

using namespace lds;

namespace {

// Brute-force definitional check: u_m | u_n for all m | n <= bound.
bool division_holds(const IntSeq& u, unsigned long bound) {
    for (unsigned long m = 1; m <= bound; ++m)
        for (unsigned long n = m; n <= bound; n += m)
            if (!divides(u(m), u(n))) return false;
    return true;
}

}  // namespace

TEST_CASE("periodic LDS: 1,1,7 pattern") {
    auto p = make_periodic(3, {{1, Int(1)}, {3, Int(7)}}, {});
    std::vector<Int> expect = {1, 1, 7, 1, 1, 7};
    for (unsigned long n = 1; n <= 6; ++n) CHECK(p.eval(n) == expect[n - 1]);
    CHECK(division_holds(p.seq(), 30));

    // sign pattern: 0,1,-1 style needs sigma on non-divisors only
    auto q = make_periodic(3, {{1, Int(1)}, {3, Int(7)}}, {{2, -1}});
    CHECK(q.eval(2) == -1);
    CHECK(q.eval(4) == 1);

    CHECK_THROWS_AS(make_periodic(3, {{1, Int(2)}, {3, Int(7)}}, {}), invalid_argument_error);
    CHECK_THROWS_AS(make_periodic(2, {{1, Int(1)}}, {}), invalid_argument_error);
}

TEST_CASE("power LDS") {
    auto p = make_power(1, {{1, 2}});
    for (unsigned long n = 1; n <= 10; ++n) CHECK(p.eval(n) == Int(n * n));
    CHECK(p.eval(0) == 0);
    CHECK(division_holds(p.seq(), 40));

    auto mixed = make_power(6, {{1, 0}, {2, 1}, {3, 0}, {6, 2}});
    CHECK(division_holds(mixed.seq(), 48));

    try {
        make_power(6, {{1, 0}, {2, 2}, {3, 0}, {6, 1}});
        FAIL("expected invariant violation");
    } catch (const invalid_argument_error& e) {
        CHECK(std::string(e.what()).find("e_2") != std::string::npos);
        CHECK(std::string(e.what()).find("e_6") != std::string::npos);
    }
}

TEST_CASE("exponential LDS") {
    auto x = make_exponential(2, {Int(2)}, {{0, 1}});
    // u_{2+2k} = 2^k, odd terms 1
    CHECK(x.eval(1) == 1);
    CHECK(x.eval(2) == 1);   // k = 0
    CHECK(x.eval(4) == 2);   // k = 1
    CHECK(x.eval(6) == 4);
    CHECK(x.eval(7) == 1);
    CHECK(division_holds(x.seq(), 64));

    // v_p grows linearly along the residue class with slope h_{p,a}
    for (unsigned long k = 1; k <= 10; ++k)
        CHECK(int_valuation(x.eval(2 + 2 * k), Int(2)) == k);

    CHECK_THROWS_AS(make_exponential(2, {Int(4)}, {{0, 1}}), invalid_argument_error);
    // h_a <= r h_b violation: h_1 = 1 but h_2 = 0 with 2 = 2*1 mod 2
    CHECK_THROWS_AS(make_exponential(2, {Int(2)}, {{1, 0}}), invalid_argument_error);
}

TEST_CASE("lucas sequences") {
    auto f = lucas_terms(Int(1), Int(-1), 11);
    CHECK(f[10] == 55);  // Fibonacci
    for (unsigned long n = 0; n <= 12; ++n) CHECK(lucas(Int(3), Int(2), n) == int_pow(Int(2), n) - 1);
    CHECK_THROWS_AS(lucas(Int(2), Int(1), 5), invalid_argument_error);  // (x-1)^2

    // strong gcd property for coprime P, Q
    auto terms = lucas_terms(Int(1), Int(-1), 51);
    for (unsigned long m = 1; m <= 50; ++m)
        for (unsigned long n = 1; n <= 50; ++n) {
            Int g = int_gcd(terms[m], terms[n]);
            CHECK(g == abs(terms[std::gcd(m, n)]));
        }
}

TEST_CASE("lehmer sequence (5,1)") {
    // alpha, beta = (sqrt5 +- 1)/2; the squared sequence starts 1,5,16,45
    auto w = lehmer_terms(Int(5), Int(1), 5);
    CHECK(w[1] == 1);
    CHECK(w[2] == 5);
    CHECK(w[3] == 16);
    CHECK(w[4] == 45);

    // exact AlgNum oracle: ((alpha^n - beta^n)/(alpha - beta))^2
    AlgNum alpha = AlgNum::quad(Rat(1, 2), Rat(1, 2), 5);
    AlgNum beta = AlgNum::quad(Rat(-1, 2), Rat(1, 2), 5);
    AlgNum denom = alpha - beta;  // = 1
    auto big = lehmer_terms(Int(5), Int(1), 41);
    for (unsigned long n = 0; n <= 40; ++n) {
        AlgNum ln = (alpha.pow(Int(static_cast<long>(n))) - beta.pow(Int(static_cast<long>(n)))) *
                    denom.inverse();
        AlgNum sq = ln * ln;
        REQUIRE(sq.is_rational());
        CHECK(sq.as_rat() == Rat(big[n]));
    }

    // perfect-square structure: odd n a square, even n r times a square
    for (unsigned long n = 1; n <= 40; ++n) {
        Int v = big[n];
        Int root;
        if (n % 2 == 1) {
            CHECK(mpz_root(root.get_mpz_t(), v.get_mpz_t(), 2) != 0);
        } else {
            Int vv = v / 5;
            CHECK(v % 5 == 0);
            CHECK(mpz_root(root.get_mpz_t(), vv.get_mpz_t(), 2) != 0);
        }
    }

    // closed form matches the recurrence
    ExpPoly ep = lehmer_expoly(Int(5), Int(1));
    for (unsigned long n = 0; n <= 40; ++n) CHECK(eval(ep, n) == Rat(big[n]));

    // division property
    CHECK(division_holds([](unsigned long n) -> Int { return lehmer(Int(5), Int(1), n); }, 40));

    CHECK_THROWS_AS(lehmer_terms(Int(4), Int(1), 5), invalid_argument_error);   // 4 not squarefree
    CHECK_THROWS_AS(lehmer_terms(Int(5), Int(2), 5), invalid_argument_error);   // 4 does not divide r-s
}

TEST_CASE("another lehmer instance (13,-3)") {
    // r = 13, s = -3: d = 4, alpha*beta = 4
    auto w = lehmer_terms(Int(13), Int(-3), 41);
    CHECK(w[1] == 1);
    CHECK(w[2] == 13);
    CHECK(division_holds([](unsigned long n) -> Int { return lehmer(Int(13), Int(-3), n); }, 40));
}

TEST_CASE("polygen: Fibonacci, Mersenne, Bala") {
    // F_n(x,y) = x^n - y^n over x - y at the golden pair
    PolyGenSpec fib;
    fib.f.add_root(RootFrac::make(0, 1), 1);
    fib.alpha = AlgNum::quad(Rat(1, 2), Rat(1, 2), 5);
    fib.beta = AlgNum::quad(Rat(1, 2), Rat(-1, 2), 5);
    auto fterms = lucas_terms(Int(1), Int(-1), 21);
    for (unsigned long n = 1; n <= 20; ++n) CHECK(polygen_eval(fib, n) == fterms[n]);

    // x = 2, y = 1: Mersenne numbers
    PolyGenSpec mer;
    mer.f.add_root(RootFrac::make(0, 1), 1);
    mer.alpha = AlgNum(Rat(2));
    mer.beta = AlgNum(Rat(1));
    for (unsigned long n = 1; n <= 20; ++n)
        CHECK(polygen_eval(mer, n) == int_pow(Int(2), n) - 1);

    // Bala: f(x,y) = (x+y)(x^3-y^3) = lcm[x^2-y^2, x^3-y^3] at (-1+-sqrt5)/2.
    // Normalized at u_1 = 1, the values are L_n F_{3n} / (L_1 F_3).
    PolyGenSpec bala;
    bala.f = lcm(UnityRootMultiset::all_nth_roots(2), UnityRootMultiset::all_nth_roots(3));
    bala.alpha = AlgNum::quad(Rat(-1, 2), Rat(1, 2), 5);
    bala.beta = AlgNum::quad(Rat(-1, 2), Rat(-1, 2), 5);
    auto lucs = lucas_terms(Int(1), Int(-1), 100);  // F
    RecurrenceSpec lrec{{Int(1), Int(1)}, {Int(2), Int(1)}};
    auto ls = eval_terms(lrec, 35);  // L
    for (unsigned long n = 1; n <= 30; ++n) {
        Int bala_n = ls[n] * lucs[3 * n];
        Int norm = ls[1] * lucs[3];  // = 2
        CHECK(polygen_eval(bala, n) * norm == bala_n);
    }
    CHECK(division_holds([&bala](unsigned long n) -> Int { return polygen_eval(bala, n); }, 36));

    // Guy-Williams as a conjugate-pair polygen with q = 3:
    // u_n = 3^{-(n-1)} * N((3^n - (1+sqrt(-5))^n)/(3 - (1+sqrt-5)))
    PolyGenSpec gw;
    gw.f.add_root(RootFrac::make(0, 1), 1);
    gw.alpha = AlgNum(Rat(3));
    gw.beta = AlgNum::quad(Rat(1), Rat(1), -5);
    gw.conjugate_pair = true;
    gw.q = 3;
    RecurrenceSpec gwrec{{Int(7), Int(-22), Int(42), Int(-36)}, {Int(0), Int(1), Int(7), Int(21)}};
    auto gwterms = eval_terms(gwrec, 25);
    for (unsigned long n = 1; n <= 24; ++n) CHECK(polygen_eval(gw, n) == gwterms[n]);

    // a wrong q surfaces as a non-integral result
    PolyGenSpec bad = gw;
    bad.q = 9;
    bool hit = false;
    for (unsigned long n = 1; n <= 6 && !hit; ++n) {
        try {
            polygen_eval(bad, n);
        } catch (const non_integral_result_error&) {
            hit = true;
        }
    }
    CHECK(hit);
}

TEST_CASE("combine by divisors") {
    IntSeq fib = [](unsigned long n) -> Int { return lucas(Int(1), Int(-1), n); };
    // M = 1: the combinator is the part itself
    auto same = combine_by_divisors(1, {{1, fib}});
    for (unsigned long n = 0; n <= 20; ++n) CHECK(same(n) == fib(n));

    // M = 2 with v(1) = 1, v(2) = Fibonacci: u_n = F_{n/2} for even n, 1 otherwise
    auto u = combine_by_divisors(2, {{2, fib}});
    CHECK(u(6) == fib(3));
    CHECK(u(7) == 1);
    CHECK(division_holds(u, 60));

    // M = 6 with three nontrivial parts
    IntSeq mers = [](unsigned long n) -> Int { return int_pow(Int(2), n) - 1; };
    IntSeq sq = [](unsigned long n) -> Int { return Int(n) * Int(n); };
    auto v = combine_by_divisors(6, {{1, sq}, {2, fib}, {3, mers}});
    CHECK(division_holds(v, 60));

    CHECK_THROWS_AS(combine_by_divisors(6, {{4, fib}}), invalid_argument_error);
}

TEST_CASE("guy_williams constructor and identity") {
    AlgNum a2(Rat(2)), a3(Rat(3));
    AlgNum b = AlgNum::quad(Rat(1), Rat(1), -5);
    AlgNum g = AlgNum::quad(Rat(1), Rat(-1), -5);
    ExpPoly ep = guy_williams(a3, a2, b, g);
    CHECK(eval(ep, 0) == 0);
    CHECK(eval(ep, 1) == 1);
    CHECK(eval(ep, 2) == 7);
    CHECK(eval(ep, 3) == 21);

    // both sides of the product identity agree for n <= 30
    for (unsigned long n = 1; n <= 30; ++n) {
        AlgNum rhs = guy_williams_rhs(a3, b, g, n);
        CHECK(eval_algebraic(ep, n) == rhs);
    }

    // alpha=4, delta=1, beta=gamma=2: (2^n-1)^2
    ExpPoly sq = guy_williams(AlgNum(Rat(4)), AlgNum(Rat(1)), AlgNum(Rat(2)), AlgNum(Rat(2)));
    for (unsigned long n = 0; n <= 20; ++n) {
        Int m = int_pow(Int(2), n) - 1;
        CHECK(eval(sq, n) == Rat(m * m));
        AlgNum rhs = guy_williams_rhs(AlgNum(Rat(4)), AlgNum(Rat(2)), AlgNum(Rat(2)), n);
        CHECK(eval_algebraic(sq, n) == rhs);
    }

    CHECK_THROWS_AS(guy_williams(a3, a3, b, g), invalid_argument_error);
}

TEST_CASE("closed forms of the families") {
    auto p = make_periodic(3, {{1, Int(1)}, {3, Int(7)}}, {});
    ExpPoly pe = to_expoly(p);
    for (unsigned long n = 1; n <= 18; ++n) CHECK(eval(pe, n) == Rat(p.eval(n)));

    auto pw = make_power(2, {{1, 1}, {2, 2}});
    ExpPoly pwe = to_expoly(pw);
    for (unsigned long n = 1; n <= 16; ++n) CHECK(eval(pwe, n) == Rat(pw.eval(n)));

    auto ex = make_exponential(2, {Int(2)}, {{0, 1}});
    ExpPoly exe = to_expoly(ex);
    for (unsigned long n = 1; n <= 16; ++n) CHECK(eval(exe, n) == Rat(ex.eval(n)));

    auto ex1 = make_exponential(1, {Int(3)}, {{1}});
    ExpPoly ex1e = to_expoly(ex1);
    for (unsigned long n = 1; n <= 12; ++n) CHECK(eval(ex1e, n) == Rat(ex1.eval(n)));

    ExpPoly luc = lucas_expoly(Int(3), Int(2));
    for (unsigned long n = 0; n <= 12; ++n) CHECK(eval(luc, n) == Rat(int_pow(Int(2), n) - 1));
}

TEST_CASE("every factory-constructed family passes the division test") {
    std::vector<std::pair<std::string, IntSeq>> families = {
        {"periodic", make_periodic(4, {{1, Int(1)}, {2, Int(2)}, {4, Int(8)}}, {{3, -1}}).seq()},
        {"power", make_power(2, {{1, 0}, {2, 3}}).seq()},
        {"exponential", make_exponential(3, {Int(5)}, {{0, 0, 1}}).seq()},
        {"lucas", [](unsigned long n) -> Int { return lucas(Int(4), Int(1), n); }},
        {"lehmer", [](unsigned long n) -> Int { return lehmer(Int(5), Int(1), n); }},
    };
    for (auto& [name, seq] : families) {
        INFO(name);
        CHECK(division_holds(seq, 40));
    }
    // deliberately broken fixture: u_n = n + 1 is not a division sequence
    IntSeq broken = [](unsigned long n) -> Int { return Int(n + 1); };
    CHECK_FALSE(division_holds(broken, 20));
}
