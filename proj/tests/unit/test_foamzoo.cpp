#include <doctest.h>

#include "foam/foamzoo.hpp"

using namespace foam;

TEST_CASE("relations at N = 2") {
    for (const std::string id : {"sphere", "theta", "neck-cutting", "digon", "joint"}) {
        CAPTURE(id);
        Relation R = build_relation(id, default_params(id, 2), 2);
        RelationReport rep = verify_relation(R, 4);
        CHECK(rep.closures > 0);
        CHECK(rep.ok());
    }
}

TEST_CASE("relation parameters are validated") {
    CHECK_THROWS_AS(build_relation("digon", {2, 2}, 3), BadParameters);
    CHECK_THROWS_AS(build_relation("nope", {}, 3), BadParameters);
    CHECK(default_params("mp", 3).empty());
}

TEST_CASE("random zoo foams are deterministic") {
    Foam a = random_zoo_foam(11, 3), b = random_zoo_foam(11, 3);
    CHECK(eval(a) == eval(b));
    CHECK(foam_degree(a) >= 0);
}
