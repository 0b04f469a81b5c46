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

#include "lds/algnum.hpp"

using namespace lds;

TEST_CASE("cyclotomic field elements reduce to minimal order") {
    Cyclo z6 = Cyclo::zeta(6, 3);  // = -1
    CHECK(z6.is_rational());
    CHECK(z6.as_rat() == -1);

    Cyclo z4sq = Cyclo::zeta(4) * Cyclo::zeta(4);
    CHECK(z4sq == Cyclo(Rat(-1)));

    // zeta_12^3 = i lives in Q(zeta_4).
    Cyclo z12c = Cyclo::zeta(12, 3);
    CHECK(z12c.order() == 4);
    CHECK(z12c == Cyclo::zeta(4));

    // Sum of all primitive cube roots: zeta_3 + zeta_3^2 = -1.
    CHECK(Cyclo::zeta(3, 1) + Cyclo::zeta(3, 2) == Cyclo(Rat(-1)));
}

TEST_CASE("cyclotomic inverse and galois") {
    Cyclo z = Cyclo::zeta(5);
    CHECK(z * z.inverse() == Cyclo(Rat(1)));
    Cyclo w = Cyclo::zeta(5) + Cyclo(Rat(2));
    CHECK(w * w.inverse() == Cyclo(Rat(1)));
    CHECK(z.galois(2) == Cyclo::zeta(5, 2));
    CHECK(z.complex_conj() == Cyclo::zeta(5, 4));
    // Norm of zeta_5 - 1 is Phi_5(1) = 5 up to sign.
    Cyclo prod(Rat(1));
    for (auto& c : (z - Cyclo(Rat(1))).conjugates()) prod = prod * c;
    CHECK(prod.is_rational());
    CHECK(abs(prod.as_rat()) == 5);
}

TEST_CASE("gauss sums give principal square roots") {
    for (long d : {-1L, 2L, -2L, 3L, -3L, 5L, -5L, 6L, 7L, -7L, 10L, 15L}) {
        Cyclo s = gauss_sqrt(d);
        CHECK(s * s == Cyclo(Rat(d)));
        auto c = s.to_complex();
        if (d > 0) {
            CHECK(c.real() > 0.0);
            CHECK(std::abs(c.imag()) < 1e-9);
        } else {
            CHECK(c.imag() > 0.0);
            CHECK(std::abs(c.real()) < 1e-9);
        }
    }
}

TEST_CASE("golden ratio norm") {
    AlgNum phi = AlgNum::quad(Rat(1, 2), Rat(1, 2), 5);
    AlgNum psi = AlgNum::quad(Rat(1, 2), Rat(-1, 2), 5);
    CHECK(phi * psi == AlgNum(Rat(-1)));
    CHECK(phi + psi == AlgNum(Rat(1)));
}

TEST_CASE("repeated multiplication oracle: ((1+sqrt5)/2)^10") {
    AlgNum phi = AlgNum::quad(Rat(1, 2), Rat(1, 2), 5);
    // Oracle: multiply out ten times, no fast powering.
    AlgNum slow(Rat(1));
    for (int i = 0; i < 10; ++i) slow = slow * phi;
    CHECK(slow == AlgNum::quad(Rat(123, 2), Rat(55, 2), 5));
    CHECK(phi.pow(10) == slow);
}

TEST_CASE("conjugates") {
    AlgNum z3 = AlgNum::zeta(3);
    auto cz = z3.conjugates();
    REQUIRE(cz.size() == 2);
    CHECK(((cz[0] == z3 && cz[1] == AlgNum::zeta(3, 2)) ||
           (cz[1] == z3 && cz[0] == AlgNum::zeta(3, 2))));

    AlgNum phi = AlgNum::quad(Rat(1, 2), Rat(1, 2), 5);
    auto cp = phi.conjugates();
    REQUIRE(cp.size() == 2);
    CHECK(cp[0] * cp[1] == AlgNum(Rat(-1)));
    CHECK(phi.norm_rational() == Rat(-1));

    // Mixed field: 4 conjugates, rational elementary symmetric functions.
    AlgNum x = AlgNum::quad(Rat(1), Rat(1), 2) * AlgNum::zeta(3);
    auto cx = x.conjugates();
    CHECK(cx.size() == 4);
    AlgNum e1(Rat(0)), e4(Rat(1));
    for (auto& c : cx) {
        e1 = e1 + c;
        e4 = e4 * c;
    }
    CHECK(e1.is_rational());
    CHECK(e4.is_rational());
}

TEST_CASE("field axioms on small random elements") {
    std::vector<AlgNum> pool = {
        AlgNum(Rat(2)),
        AlgNum::quad(Rat(1), Rat(1), 5),
        AlgNum::quad(Rat(0), Rat(1, 2), -5),
        AlgNum::zeta(3),
        AlgNum::zeta(4) + AlgNum(Rat(1)),
        AlgNum::quad(Rat(-1, 3), Rat(2), 5) * AlgNum::zeta(6),
    };
    for (auto& x : pool)
        for (auto& y : pool)
            for (auto& z : pool) {
                CHECK((x + y) + z == x + (y + z));
                CHECK((x * y) * z == x * (y * z));
                CHECK(x * (y + z) == x * y + x * z);
            }
    for (auto& x : pool) {
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == AlgNum(Rat(1)));
    }
}

TEST_CASE("absorption of quadratic parts into cyclotomic fields") {
    // sqrt(5) lies in Q(zeta_5): products with zeta_5 absorb it.
    AlgNum s5 = AlgNum::sqrt_of(5);
    AlgNum m = s5 * AlgNum::zeta(5);
    CHECK(m.quad_disc() == 1);
    CHECK(m * m == AlgNum(Rat(5)) * AlgNum::zeta(5, 2));

    // sqrt(-1) is just zeta_4.
    AlgNum i = AlgNum::sqrt_of(-1);
    AlgNum j = i * AlgNum::zeta(4);
    CHECK(j == AlgNum(Rat(-1)));

    // Mixing two quadratic generators inside the cap works...
    AlgNum s2 = AlgNum::sqrt_of(2);
    AlgNum s3 = AlgNum::sqrt_of(3);
    AlgNum s6 = s2 * s3;
    CHECK(s6 * s6 == AlgNum(Rat(6)));

    // ...and beyond the cap it reports unsupported-field.
    AlgNum::set_max_order(10);
    CHECK_THROWS_AS(AlgNum::sqrt_of(7) * AlgNum::sqrt_of(11), unsupported_field_error);
    AlgNum::set_max_order(60);
}

TEST_CASE("is_root_of_unity") {
    CHECK(AlgNum(Rat(-1)).is_root_of_unity() == 2);
    CHECK(AlgNum(Rat(1)).is_root_of_unity() == 1);
    CHECK_FALSE(AlgNum::quad(Rat(1, 2), Rat(1, 2), 5).is_root_of_unity().has_value());

    // zeta_12^5 has order 12: direct powering oracle.
    AlgNum z = AlgNum::zeta(12, 5);
    AlgNum p(Rat(1));
    unsigned long oracle = 0;
    for (unsigned long m = 1; m <= 24; ++m) {
        p = p * z;
        if (p == AlgNum(Rat(1))) {
            oracle = m;
            break;
        }
    }
    CHECK(oracle == 12);
    CHECK(z.is_root_of_unity() == 12);

    // |x| = 1 but not a root of unity.
    AlgNum x = AlgNum::quad(Rat(3, 5), Rat(4, 5), -1);
    CHECK_FALSE(x.is_root_of_unity().has_value());
    // (1+i)/sqrt(2) is an 8th root of unity.
    AlgNum y = (AlgNum(Rat(1)) + AlgNum::sqrt_of(-1)) * AlgNum::sqrt_of(2).inverse();
    CHECK(y.is_root_of_unity() == 8);

    CHECK_THROWS_AS(AlgNum(Rat(0)).is_root_of_unity(), invalid_argument_error);
}

TEST_CASE("division errors") {
    CHECK_THROWS_AS(AlgNum(Rat(0)).inverse(), division_by_zero_error);
}
