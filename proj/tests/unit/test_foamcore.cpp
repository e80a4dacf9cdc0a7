#include <doctest.h>

#include "foam/foamio.hpp"
#include "foam/foamzoo.hpp"

using namespace foam;

TEST_CASE("theta foam structure") {
    Foam T = build_theta(1, 1, SchurCombo::one(1), SchurCombo::one(1), SchurCombo::one(2), 2);
    CHECK(validate_foam(T).ok());
    CHECK(enumerate_colorings(T).size() == 2);
    CHECK(foam_degree(T) == -2);
    for (const auto& c : enumerate_colorings(T)) {
        CHECK(satisfies_flow(T, c));
        CHECK(monochrome_euler(T, c, 0) == 2);
    }
}

TEST_CASE("sphere colorings") {
    Foam S = build_sphere(2, SchurCombo::one(2), 4);
    CHECK(enumerate_colorings(S).size() == 6);
}

TEST_CASE("foam files round trip and report locations") {
    Foam T = build_theta(1, 2, SchurCombo::single(1, YoungDiagram({1})), SchurCombo::one(2), SchurCombo::one(3), 3);
    Foam U = parse_foam(foam_to_json(T));
    CHECK(foam_to_json(U) == foam_to_json(T));
    try {
        parse_foam(R"({"n":2,"facets":[{"id":0,"label":1},{"id":1,"label":"x"}],"arcs":[]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("facets[1].label") != std::string::npos);
    }
}

TEST_CASE("broken gluing is rejected") {
    Foam T = build_theta(1, 1, SchurCombo::one(1), SchurCombo::one(1), SchurCombo::one(2), 2);
    T.facets[2].label = 1;
    CHECK_FALSE(validate_foam(T).ok());
    CHECK_THROWS_AS(require_valid(T), InvalidFoam);
}

TEST_CASE("Kempe moves keep the flow condition") {
    Foam T = build_theta(1, 2, SchurCombo::one(1), SchurCombo::one(2), SchurCombo::one(3), 3);
    for (const auto& c : enumerate_colorings(T))
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                auto comps = kempe_components(T, c, i, j);
                for (std::size_t k = 0; k < comps.size(); ++k)
                    CHECK(satisfies_flow(T, apply_kempe(T, c, i, j, static_cast<int>(k))));
            }
}
