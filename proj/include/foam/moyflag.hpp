/**
 * @file moyflag.hpp
 * @brief MOY graphs, quantum integers, graded ranks and the Frobenius
 *        structure on generalized theta webs (bases, Gram matrices,
 *        structure constants, Littlewood-Richardson coefficients).
 *
 * File format for MOY graphs:
 *   { "n": N,
 *     "edges":    [ {"id", "label", "tail", "head"} ],   // tail/head -1 for a circle
 *     "vertices": [ {"id", "kind": "merge"|"split", "left", "right", "thick"} ] }
 * left/right name the thin edges as drawn with the flow pointing up.
 */
#ifndef FOAM_MOYFLAG_HPP
#define FOAM_MOYFLAG_HPP

#include <map>
#include <string>
#include <vector>

#include "foam/foamcore.hpp"

namespace foam {

struct MoyEdge {
    int label = 0;
    int tail = -1, head = -1;  // vertex ids, both -1 for a circle
};

struct MoyVertex {
    bool merge = true;
    int left = -1, right = -1, thick = -1;  // edge ids
};

struct MoyGraph {
    int N = 0;
    std::vector<MoyEdge> edges;
    std::vector<MoyVertex> vertices;

    /// Throws InvalidGraph.
    void validate() const;
    static MoyGraph circle(int k, int N);
    /// Generalized theta web: strands a_1..a_k merged left to right, N = sum.
    static MoyGraph theta(const std::vector<int>& a);
};

MoyGraph parse_moy(const std::string& text);
std::string moy_to_json(const MoyGraph& G);
MoyGraph read_moy_file(const std::string& path);

/// Edge colorings by pigment sets of size = label with the flow condition.
Int moy_coloring_count(const MoyGraph& G);

class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(int exp, const Int& c = 1);

    const std::map<int, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(int exp, const Int& c);
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

    /// Exact quotient; throws NotDivisible.
    LaurentPoly divide_exact(const LaurentPoly& d) const;
    Int at_one() const;
    bool is_palindromic() const;
    std::string to_string() const;  // "q^2 + 1 + q^-2"

private:
    std::map<int, Int> terms_;
};

LaurentPoly qint(int k);
/// Zero for k < 0 or k > l.
LaurentPoly qbinom(int l, int k);
/// [sum a]! / prod [a_i]!, computed by exact division.
LaurentPoly qmultinomial(const std::vector<int>& a);
/// [N]!/prod [a_i]!, computed as a product of binomials.
LaurentPoly graded_rank_theta(const std::vector<int>& a);

/// Basis index: one diagram per strand, lambda_1 empty and
/// lambda_i in T(a_i, a_1+...+a_{i-1}).
using ThetaIndex = std::vector<YoungDiagram>;
std::vector<ThetaIndex> theta_basis_index(const std::vector<int>& a);

struct ThetaBasisElement {
    ThetaIndex index;
    /// Decorations on the strand facets (basis) or on the partial-sum facets
    /// s_1..s_{k-1} (dual basis).
    std::vector<SchurCombo> decorations;
    int sign = 1;
    bool dual = false;
};
std::vector<ThetaBasisElement> theta_basis(const std::vector<int>& a);
std::vector<ThetaBasisElement> theta_dual_basis(const std::vector<int>& a);

/// Cup foam of an element as a movie from the empty web to the theta web.
struct OpenFoam;
OpenFoam theta_cup_foam(const std::vector<int>& a, const ThetaBasisElement& e);

/// Entry (i, j): sign_i sign_j <cup_i glued to the mirror of cup_j>, computed
/// on the closed generalized theta foam.
std::vector<std::vector<MultiPoly>> gram_matrix(const std::vector<int>& a, const std::vector<ThetaBasisElement>& rows,
                                                const std::vector<ThetaBasisElement>& cols, int jobs = 1);

/// c^lambda_{alpha beta} for every basis index lambda (zero entries omitted).
std::map<ThetaIndex, MultiPoly> structure_constants(const std::vector<int>& a, const ThetaIndex& alpha,
                                                    const ThetaIndex& beta);

/// c^lambda_{alpha beta} from one theta foam with N = a + b; alpha, beta, lambda in T(b, a).
Int lr_via_foam(const YoungDiagram& alpha, const YoungDiagram& beta, const YoungDiagram& lam, int a, int b);

}  // namespace foam

#endif
