#include "doctest.h"

#include "reeb/errors.hpp"
#include "reeb/scalar.hpp"

using reeb::Scalar;

TEST_CASE("rational arithmetic is exact") {
    Scalar a(1, 3);
    Scalar b(1, 6);
    CHECK(a + b == Scalar(1, 2));
    CHECK(a - b == Scalar(1, 6));
    CHECK(a * b == Scalar(1, 18));
    CHECK(a / b == Scalar(2));
    // 1/3 has no finite binary expansion; summing it three times must hit 1
    // exactly, which a floating-point backend would miss.
    CHECK(a + a + a == Scalar(1));
}

TEST_CASE("gaussian arithmetic") {
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    CHECK((Scalar(3) + i) * (Scalar(3) - i) == Scalar(10));
    CHECK(!i.is_real());
    CHECK(Scalar(2, 5).is_real());

    // (1 + i) / (1 - i) = i
    Scalar z = (Scalar(1) + i) / (Scalar(1) - i);
    CHECK(z == i);
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), reeb::Error);
}

TEST_CASE("decimal strings become exact rationals") {
    CHECK(Scalar::from_decimal_string("3") == Scalar(3));
    CHECK(Scalar::from_decimal_string("-7") == Scalar(-7));
    CHECK(Scalar::from_decimal_string("0.25") == Scalar(1, 4));
    CHECK(Scalar::from_decimal_string("-1.5") == Scalar(-3, 2));
    CHECK(Scalar::from_decimal_string("2/3") == Scalar(2, 3));
    CHECK_THROWS_AS(Scalar::from_decimal_string("abc"), reeb::Error);
    CHECK_THROWS_AS(Scalar::from_decimal_string(""), reeb::Error);
}

TEST_CASE("printing") {
    CHECK(Scalar(-3, 2).to_string() == "-3/2");
    CHECK(Scalar(5).to_string() == "5");
    CHECK(Scalar::i().to_string() == "i");
    CHECK((Scalar(0)).to_string() == "0");
    CHECK(Scalar(-3, 2).has_sign_out_front());
    CHECK(!Scalar(3, 2).has_sign_out_front());
}

TEST_CASE("ordering is total on rationals") {
    CHECK(Scalar(1, 3) < Scalar(1, 2));
    CHECK(!(Scalar(1, 2) < Scalar(1, 2)));
    CHECK(Scalar(-5) < Scalar(0));
}
