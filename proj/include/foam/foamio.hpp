/**
 * @file foamio.hpp
 * @brief JSON foam files.
 *
 * Layout:
 *   { "n": N,
 *     "facets": [ {"id", "label", "genus", "boundary": [[[arc, slot], ...], ...],
 *                  "decoration": [["[2,1]", coeff], ...]} ],
 *     "arcs":   [ {"id", "kind": "circle"|"interval", "sides": [f0, f1, f2],
 *                  "endpoints": [tail, head]} ],
 *     "points": [ {"id", "incident": [[arc, end], x4]} ] }
 * Ids must be 0, 1, 2, ... in order. A missing decoration means the constant 1;
 * a missing boundary is recomputed from the gluing. Coefficients may be
 * integers or decimal strings.
 */
#ifndef FOAM_FOAMIO_HPP
#define FOAM_FOAMIO_HPP

#include <string>

#include "foam/foamcore.hpp"

namespace foam {

/// Throws ParseError with a location such as "facets[2].label".
Foam parse_foam(const std::string& text);
std::string foam_to_json(const Foam& F, int indent = 1);
Foam read_foam_file(const std::string& path);
void write_foam_file(const std::string& path, const Foam& F);

}  // namespace foam

#endif
