#include <catch2/catch_amalgamated.hpp>

#include <shiftlab/complex.hpp>
#include <shiftlab/precision.hpp>
#include <shiftlab/rational.hpp>

using namespace shiftlab;

TEST_CASE("working precision defaults and guards") {
    set_working_digits(50);
    REQUIRE(working_digits() == 50);
    {
        PrecisionGuard g(100);
        REQUIRE(working_digits() == 100);
        const Real x = Real(1) / 3;
        REQUIRE(x.precision() >= 100);
    }
    REQUIRE(working_digits() == 50);
    REQUIRE_THROWS_AS(set_working_digits(2), PrecisionError);
    REQUIRE_THROWS_AS(set_working_digits(1000000), PrecisionError);
}

TEST_CASE("unit roundoff scales with precision") {
    set_working_digits(50);
    REQUIRE(unit_roundoff() == pow(Real(10), -49));
    REQUIRE(ulps_of(Real(100), 3) == Real(3) * unit_roundoff() * 100);
    // scale floor keeps comparisons meaningful near zero
    REQUIRE(ulps_of(Real("1e-40")) == unit_roundoff());
    REQUIRE(within_ulps(Real(1), Real(1) + unit_roundoff() / 2, 1));
    REQUIRE_FALSE(within_ulps(Real(1), Real(1) + Real("1e-20"), 1));
}

TEST_CASE("real decimal strings parse at full precision") {
    set_working_digits(50);
    const Real x("0.1");
    REQUIRE(abs(10 * x - 1) < Real("1e-49"));
    const Real y("1e-30");
    REQUIRE(y > 0);
    REQUIRE(y < Real("1.0000001e-30"));
}

TEST_CASE("complex arithmetic identities") {
    set_working_digits(50);
    const Cplx a{Real(1), Real(2)};
    const Cplx b{Real(3), Real(-1)};
    const Cplx prod = a * b;
    REQUIRE(prod.re == 5);
    REQUIRE(prod.im == 5);
    const Cplx q = prod / b;
    REQUIRE(abs(q - a) < Real("1e-48"));
    REQUIRE(conj(a).im == -2);
    REQUIRE(norm2(a) == 5);
    REQUIRE(abs(abs(a) * abs(a) - 5) < Real("1e-48"));
}

TEST_CASE("complex exponential and roots of unity") {
    set_working_digits(50);
    const Cplx e_ipi = cexp(Cplx{Real(0), real_pi()});
    REQUIRE(abs(e_ipi - Cplx{Real(-1)}) < Real("1e-48"));
    const Cplx i4 = unit_root(1, 4);
    REQUIRE(abs(i4.re) < Real("1e-48"));
    REQUIRE(abs(i4.im - 1) < Real("1e-48"));
    const Cplx full = unit_root(5, 5);
    REQUIRE(abs(full - Cplx{Real(1)}) < Real("1e-48"));
}

TEST_CASE("integer powers by squaring match direct products") {
    set_working_digits(50);
    const Cplx z{Real(1) / 3, Real(2) / 7};
    Cplx direct{Real(1)};
    for (int k = 0; k < 13; ++k) direct = direct * z;
    REQUIRE(abs(cpow(z, 13) - direct) < Real("1e-49"));
    REQUIRE(cpow(z, 0) == Cplx{Real(1)});
}

TEST_CASE("rationals parse from fraction and decimal strings") {
    REQUIRE(rat_from_string("7") == Rat(7));
    REQUIRE(rat_from_string("-3/2") == Rat(-3, 2));
    REQUIRE(rat_from_string("1.25") == Rat(5, 4));
    REQUIRE(rat_to_string(Rat(-3, 2)) == "-3/2");
    set_working_digits(50);
    REQUIRE(abs(rat_to_real(Rat(1, 3)) - Real(1) / 3) < Real("1e-49"));
}

TEST_CASE("pi-rational values carry exact pi multiples") {
    set_working_digits(50);
    const PiRat two_pi = pirat_from_string("2pi");
    REQUIRE(abs(two_pi.to_real() - 2 * real_pi()) < Real("1e-49"));
    const PiRat frac = pirat_from_string("3/2pi");
    REQUIRE(abs(frac.to_real() - Real(3) / 2 * real_pi()) < Real("1e-49"));
    const PiRat plain = pirat_from_string("5/3");
    REQUIRE(plain.is_rational());
    REQUIRE(abs(plain.to_real() - Real(5) / 3) < Real("1e-49"));
}

TEST_CASE("quadratic surds multiply and compare exactly") {
    const RootRat a(Rat(2), Rat(3));    // 2 sqrt(3)
    const RootRat b(Rat(5), Rat(27));   // 5 sqrt(27)
    const RootRat prod = a * b;         // 10 sqrt(81) = 90
    REQUIRE(prod == RootRat(Rat(90)));
    REQUIRE(inverse(a) * a == RootRat::one());
    REQUIRE(a / b == RootRat(Rat(2), Rat(3)) * inverse(RootRat(Rat(5), Rat(27))));
    // sqrt(2) < 3/2 because 2 < 9/4
    REQUIRE(RootRat(Rat(1), Rat(2)) < RootRat(Rat(3, 2)));
    REQUIRE(RootRat(Rat(-1), Rat(2)) < RootRat::zero());
    REQUIRE(add_same_radicand(RootRat(Rat(1), Rat(5)), RootRat(Rat(2), Rat(5))) ==
            RootRat(Rat(3), Rat(5)));
    REQUIRE(RootRat(Rat(0), Rat(7)).is_zero());
    set_working_digits(50);
    REQUIRE(abs(RootRat(Rat(2), Rat(3)).to_real() - 2 * sqrt(Real(3))) < Real("1e-48"));
}

TEST_CASE("factorials and rising factorials") {
    REQUIRE(factorial_big(0) == 1);
    REQUIRE(factorial_big(10) == 3628800);
    REQUIRE(pochhammer_rat(Rat(3), 4) == Rat(360));   // 3*4*5*6
    REQUIRE(pochhammer_rat(Rat(1, 2), 2) == Rat(3, 4));  // (1/2)(3/2)
    REQUIRE(pochhammer_rat(Rat(5), 0) == Rat(1));
}
