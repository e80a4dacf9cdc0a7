#include <doctest.h>

#include "foam/foameval.hpp"
#include "foam/movie.hpp"

using namespace foam;

TEST_CASE("cup then cap is a sphere") {
    Movie m(3);
    m.cup("c", 1);
    m.decorate("c", SchurCombo::single(1, YoungDiagram({1, 1})));
    m.cap("c");
    Foam F = close_movie(m.finish());
    CHECK(F.facets.size() == 1);
    CHECK(eval(F) == MultiPoly::constant(3, -1));
}

TEST_CASE("a zip of two circles and its death closes a theta") {
    Movie m(2);
    m.cup("a", 1);
    m.cup("b", 1);
    m.zip({"a", "b", true, true, "n", "", ""});
    CHECK(m.label("n") == 2);
    m.decorate("b", SchurCombo::single(1, YoungDiagram({1})));
    m.death("n", "a");
    CHECK_FALSE(m.has_edge("n"));
}

TEST_CASE("illegal moves throw") {
    Movie m(2);
    m.cup("a", 1);
    CHECK_THROWS_AS(m.cap("zz"), InvalidMove);
    CHECK_THROWS_AS(m.cup("a", 1), InvalidMove);
}
