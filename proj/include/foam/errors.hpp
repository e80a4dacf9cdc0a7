/**
 * @file errors.hpp
 * @brief Exception types shared by the foam engine.
 */
#ifndef FOAM_ERRORS_HPP
#define FOAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace foam {

struct FoamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FOAM_DEFINE_ERROR(Name)                                   \
    struct Name : FoamError {                                     \
        explicit Name(const std::string& what)                    \
            : FoamError(std::string(#Name) + ": " + what) {}      \
    }

FOAM_DEFINE_ERROR(ArityMismatch);
FOAM_DEFINE_ERROR(NotDivisible);
FOAM_DEFINE_ERROR(NotPolynomial);
FOAM_DEFINE_ERROR(NotSymmetric);
FOAM_DEFINE_ERROR(DegreeMismatch);
FOAM_DEFINE_ERROR(DiagramTooBig);
FOAM_DEFINE_ERROR(InadmissibleDiagram);
FOAM_DEFINE_ERROR(SetOverlap);
FOAM_DEFINE_ERROR(BadParameters);
FOAM_DEFINE_ERROR(OddEuler);
FOAM_DEFINE_ERROR(BadCircleStructure);
FOAM_DEFINE_ERROR(InvalidFoam);
FOAM_DEFINE_ERROR(InvalidComponent);
FOAM_DEFINE_ERROR(RepeatedPoint);
FOAM_DEFINE_ERROR(ParseError);
FOAM_DEFINE_ERROR(BoundaryMismatch);
FOAM_DEFINE_ERROR(InvalidGraph);
FOAM_DEFINE_ERROR(InvalidMove);

#undef FOAM_DEFINE_ERROR

}  // namespace foam

#endif
