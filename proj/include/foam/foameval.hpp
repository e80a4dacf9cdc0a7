/**
 * @file foameval.hpp
 * @brief State-sum evaluation of closed decorated foams.
 */
#ifndef FOAM_FOAMEVAL_HPP
#define FOAM_FOAMEVAL_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "foam/foamcore.hpp"

namespace foam {

/// (-1)^sign_exp * P / Q with Q given by its (i,j) exponents (possibly negative).
struct ColoredValue {
    int sign_exp = 0;
    MultiPoly P;
    RationalFn::DenMap Q;
};

int s_invariant(const Foam& F, const Coloring& c);
ColoredValue colored_value(const Foam& F, const Coloring& c);
RationalFn eval_colored(const Foam& F, const Coloring& c);

struct EvalOptions {
    int jobs = 1;
    bool check_symmetry = true;
    bool check_degree = true;
};

struct EvalResult {
    MultiPoly value;
    long colorings = 0;
    int degree = 0;
};

/// Sum over all colorings, normalized to a polynomial. Throws NotPolynomial,
/// NotSymmetric or DegreeMismatch when a checked property fails.
EvalResult eval_full(const Foam& F, const EvalOptions& opts = {});
MultiPoly eval(const Foam& F, const EvalOptions& opts = {});

/// Sum of the colored values at a point with pairwise distinct coordinates.
Rat eval_numeric(const Foam& F, const std::vector<Rat>& point);

/// One colored value at a point with pairwise distinct coordinates.
Rat colored_numeric(const Foam& F, const Coloring& c, const std::vector<Rat>& point);

/// Checks over every coloring, relative to every pigment pair i < j:
///  [0] monochrome/bichrome Euler parities and chi(F_i∩j) = theta+ + theta- mod 2,
///  [1] theta+_{ik} + theta+_{jk} mod 2 is invariant under Kempe moves (k > j),
///  [2] a Kempe move changes chi(F_ik) by minus the change of chi(F_jk),
///  [3] exchanging colors i, i+1 everywhere equals swapping X_i, X_{i+1},
///  [4] a Kempe move relative to pigments 1, 2 along S changes s(F, c) by chi(S)/2 mod 2.
/// Kempe outputs are also checked against the flow condition (counted in [2]).
struct LemmaReport {
    long colorings = 0;
    std::array<long, 5> checks{};
    std::array<long, 5> failures{};
    std::vector<std::string> messages;  // first few failures
    bool ok() const {
        for (long f : failures)
            if (f) return false;
        return true;
    }
};
LemmaReport check_coloring_lemmas(const Foam& F, std::uint64_t seed = 1);

/// Formal linear combination of closed foams with polynomial coefficients.
struct FoamLinComb {
    std::vector<std::pair<MultiPoly, Foam>> terms;

    void add(const MultiPoly& coeff, Foam F) { terms.emplace_back(coeff, std::move(F)); }
    void add(const Int& coeff, Foam F);
    FoamLinComb& operator+=(const FoamLinComb& o);
    FoamLinComb operator-() const;
};
MultiPoly eval_lincomb(const FoamLinComb& L, int N, const EvalOptions& opts = {});

}  // namespace foam

#endif
