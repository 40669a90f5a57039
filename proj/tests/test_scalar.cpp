#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ostrowski/scalar.h"

#include <stdexcept>

using namespace ostrowski;

TEST_CASE("exact arithmetic is closed and exact") {
    Scalar a = Scalar::exact(mpq_class(1, 3), mpq_class(2, 5));
    Scalar b = Scalar::exact(mpq_class(-3, 7), 1);
    Scalar q = a / b;
    CHECK(q * b == a);
    CHECK(a + b - b == a);
    CHECK((a * a.conj()).is_real());
    CHECK((a * a.conj()) == Scalar::exact(a.norm_exact()));
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) * a.pow(2) == Scalar::one(Mode::exact));
    CHECK(Scalar::exact(mpq_class(4, 5)) * Scalar::exact(2) == Scalar::exact(mpq_class(8, 5)));
}

TEST_CASE("division by zero is a domain error") {
    CHECK_THROWS_AS(Scalar::exact(1) / Scalar::zero(Mode::exact), std::domain_error);
}

TEST_CASE("mixed modes are rejected") {
    Scalar e = Scalar::exact(1);
    Scalar f = Scalar::one(Mode::floating, 128);
    CHECK_THROWS_AS(e + f, std::invalid_argument);
    CHECK_THROWS_AS(e * f, std::invalid_argument);
}

TEST_CASE("float mode keeps its precision") {
    Scalar f = Scalar::from_double({0.5, -0.25}, Mode::floating, 300);
    CHECK(f.precision() == 300);
    CHECK((f * f).precision() == 300);
    CHECK(f.to_complex() == std::complex<double>(0.5, -0.25));
    CHECK(Scalar::exact(1).precision() == 0);
}

TEST_CASE("mode conversion round trips binary rationals") {
    Scalar e = Scalar::exact(mpq_class(3, 8), mpq_class(-5, 16));
    Scalar f = e.to_mode(Mode::floating, 64);
    CHECK(f.to_mode(Mode::exact) == e);
    Scalar third = Scalar::exact(mpq_class(1, 3)).to_mode(Mode::floating, 256);
    CHECK(third.abs_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("hex float text is exact") {
    BigFloat x(mpq_class(1, 3), 256);
    BigFloat y = BigFloat::from_hex(x.to_hex(), 256);
    CHECK(x == y);
    CHECK_THROWS_AS(BigFloat::from_hex("0xzz", 64), std::invalid_argument);
}

TEST_CASE("parse_mode") {
    CHECK(parse_mode("exact") == Mode::exact);
    CHECK(parse_mode("float") == Mode::floating);
    CHECK(mode_name(Mode::floating) == "float");
    CHECK_THROWS_AS(parse_mode("double"), std::invalid_argument);
}
