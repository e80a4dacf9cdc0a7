#include <doctest.h>

#include "foam/moyflag.hpp"

using namespace foam;

TEST_CASE("quantum integers") {
    CHECK(qint(3).to_string() == "q^2 + 1 + q^-2");
    CHECK(qbinom(4, 2).at_one() == 6);
    CHECK(qbinom(3, 5).is_zero());
    CHECK(qmultinomial({1, 1, 1}) == graded_rank_theta({1, 1, 1}));
    CHECK(graded_rank_theta({1, 2}).is_palindromic());
}

TEST_CASE("MOY coloring counts") {
    CHECK(moy_coloring_count(MoyGraph::circle(2, 4)) == 6);
    CHECK(moy_coloring_count(MoyGraph::theta({1, 1, 1})) == 6);
    CHECK(moy_coloring_count(MoyGraph::theta({2, 2})) == 6);
    MoyGraph G = parse_moy(moy_to_json(MoyGraph::theta({1, 2})));
    CHECK(moy_coloring_count(G) == 3);
}

TEST_CASE("theta bases") {
    CHECK(theta_basis({1, 1, 1}).size() == 6);
    CHECK(theta_dual_basis({2, 2}).size() == 6);
}

TEST_CASE("LR via foams") {
    CHECK(lr_via_foam(YoungDiagram({1}), YoungDiagram(), YoungDiagram({1}), 1, 1) == 1);
    CHECK(lr_via_foam(YoungDiagram({1}), YoungDiagram({1}), YoungDiagram({1, 1}), 2, 2) == 1);
}
