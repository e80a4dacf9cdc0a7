#include <doctest.h>

#include "foam/schur.hpp"

using namespace foam;

TEST_CASE("diagram parsing and boxes") {
    YoungDiagram d = YoungDiagram::parse("[2,1]");
    CHECK(d.size() == 3);
    CHECK(d.to_string() == "[2,1]");
    CHECK(conjugate(YoungDiagram({3, 1})) == YoungDiagram({2, 1, 1}));
    CHECK(enumerate_box(2, 2).size() == 6);
    CHECK(complement_in(YoungDiagram({1}), 2, 2) == YoungDiagram({2, 1}));
    CHECK_THROWS_AS(YoungDiagram::parse("[1,2"), ParseError);
}

TEST_CASE("three Schur algorithms agree") {
    for (const auto& d : enumerate_box(3, 3))
        for (int k = 0; k <= 4; ++k) {
            VarSet vs;
            for (int i = 0; i < k; ++i) vs.push_back(i);
            for (auto conv : {Convention::Row, Convention::Facet}) {
                if (!admissible(d, k, conv)) continue;
                const MultiPoly a = schur_eval(d, vs, 4, conv);
                CHECK(a == schur_eval_ssyt(d, vs, 4, conv));
                CHECK(a == schur_eval_jt(d, vs, 4, conv));
            }
        }
}

TEST_CASE("small Schur values") {
    // s_2(X1,X2) = X1^2 + X1 X2 + X2^2
    CHECK(schur_eval(YoungDiagram({2}), {0, 1}, 2, Convention::Row).to_string() == "X1^2 + X1*X2 + X2^2");
    // facet convention transposes
    CHECK(schur_eval(YoungDiagram({1, 1}), {0, 1}, 2, Convention::Facet) ==
          schur_eval(YoungDiagram({2}), {0, 1}, 2, Convention::Row));
}

TEST_CASE("Littlewood-Richardson coefficients") {
    CHECK(lr_coeff(YoungDiagram({2, 1}), YoungDiagram({2, 1}), YoungDiagram({3, 2, 1})) == 2);
    CHECK(lr_coeff(YoungDiagram({1}), YoungDiagram({1}), YoungDiagram({2})) == 1);
    CHECK(lr_coeff(YoungDiagram({1}), YoungDiagram(), YoungDiagram({1})) == 1);
    CHECK(lr_coeff(YoungDiagram({2}), YoungDiagram({2}), YoungDiagram({2, 1, 1})) == 0);
}

TEST_CASE("alternant of a two-variable set") {
    CHECK(vandermonde({0, 1}, 2) == MultiPoly::linear(2, 0, 1));
}
