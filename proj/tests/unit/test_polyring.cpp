#include <doctest.h>

#include "foam/polyring.hpp"

using namespace foam;

namespace {
MultiPoly X(int n, int i) { return MultiPoly::variable(n, i); }
}  // namespace

TEST_CASE("arithmetic and canonical text") {
    MultiPoly p = X(2, 0) * X(2, 0) - X(2, 1) * X(2, 1);
    CHECK(p.to_string() == "X1^2 - X2^2");
    CHECK(MultiPoly::parse_canonical(p.to_canonical(), 2) == p);
    CHECK(MultiPoly::constant(3, -1).to_string() == "-1");
    CHECK((p - p).is_zero());
    CHECK((X(2, 0) + X(2, 1)).pow(2) == X(2, 0) * X(2, 0) + Int(2) * X(2, 0) * X(2, 1) + X(2, 1) * X(2, 1));
}

TEST_CASE("grevlex order puts X1 first within a degree") {
    MultiPoly p = X(3, 2) * X(3, 2) + X(3, 0) * X(3, 1) + X(3, 0) * X(3, 0);
    CHECK(p.terms().begin()->first == Exponents{2, 0, 0});
}

TEST_CASE("exact division by X_i - X_j") {
    MultiPoly p = X(2, 0) * X(2, 0) - X(2, 1) * X(2, 1);
    CHECK(exact_div_linear(p, 0, 1) == X(2, 0) + X(2, 1));
    CHECK_THROWS_AS(exact_div_linear(X(2, 0), 0, 1), NotDivisible);
}

TEST_CASE("rational functions normalize to polynomials") {
    // X1/(X1-X2) + X2/(X2-X1) = 1
    RationalFn a(X(2, 0), {{{0, 1}, 1}});
    RationalFn b(-X(2, 1), {{{0, 1}, 1}});
    CHECK(rf_normalize(rf_add(a, b)) == MultiPoly::constant(2, 1));
    RationalFn c(X(2, 0), {{{0, 1}, 1}});
    CHECK_THROWS_AS(rf_normalize(c), NotPolynomial);
}

TEST_CASE("symmetry and specialization") {
    CHECK(is_symmetric(X(3, 0) + X(3, 1) + X(3, 2)));
    CHECK_FALSE(is_symmetric(X(3, 0)));
    CHECK(specialize(X(2, 0) * X(2, 1), std::vector<long>{3, 4}) == 12);
    CHECK_THROWS_AS(X(2, 0) + X(3, 0), ArityMismatch);
}
