#include <doctest.h>

#include "foam/foamzoo.hpp"

using namespace foam;

namespace {
SchurCombo pi(int a, std::vector<int> rows) { return SchurCombo::single(a, YoungDiagram(std::move(rows))); }
}  // namespace

TEST_CASE("spheres") {
    CHECK(eval(build_sphere(1, pi(1, {1}), 2)) == MultiPoly::constant(2, -1));
    CHECK(eval(build_sphere(1, SchurCombo::one(1), 2)).is_zero());
    // a dotted 1-sphere with two dots at N = 2 is -(X1 + X2)
    CHECK(eval(build_sphere(1, pi(1, {1, 1}), 2)).to_string() == "-X1 - X2");
}

TEST_CASE("theta values") {
    CHECK(eval(build_theta(1, 1, SchurCombo::one(1), pi(1, {1}), SchurCombo::one(2), 2)) == MultiPoly::constant(2, -1));
    CHECK(eval(build_theta(1, 1, pi(1, {1}), SchurCombo::one(1), SchurCombo::one(2), 2)) == MultiPoly::constant(2, 1));
}

TEST_CASE("torus counts colorings") {
    CHECK(eval(build_graph_times_circle(MoyGraph::circle(1, 3))) == MultiPoly::constant(3, 3));
    CHECK(eval(build_graph_times_circle(MoyGraph::circle(2, 4))) == MultiPoly::constant(4, 6));
}

TEST_CASE("numeric evaluation matches the polynomial") {
    Foam F = build_sphere(2, pi(2, {2, 2, 1}), 4);
    const MultiPoly p = eval(F);
    std::vector<Rat> pt = {Rat(1), Rat(3), Rat(-2), Rat(7, 2)};
    CHECK(eval_numeric(F, pt) == specialize(p, pt));
    CHECK_THROWS_AS(eval_numeric(F, {Rat(1), Rat(1), Rat(2), Rat(3)}), RepeatedPoint);
}

TEST_CASE("parallel evaluation equals serial") {
    Foam F = random_zoo_foam(3, 3);
    EvalOptions one, four;
    four.jobs = 4;
    CHECK(eval(F, one) == eval(F, four));
}

TEST_CASE("coloring lemmas on a theta foam") {
    LemmaReport rep = check_coloring_lemmas(build_theta(1, 2, SchurCombo::one(1), SchurCombo::one(2),
                                                        SchurCombo::one(3), 3));
    CHECK(rep.ok());
    CHECK(rep.colorings == 3);
}
