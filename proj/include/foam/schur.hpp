/**
 * @file schur.hpp
 * @brief Young diagrams, Schur polynomials (three independent algorithms),
 *        Littlewood-Richardson coefficients and the Schur summation identities
 *        used by the square and orthogonality relations.
 *
 * Box conventions: T(a,b) is the set of diagrams with at most a columns and
 * at most b rows; every box operation takes (columns, rows) in that order.
 */
#ifndef FOAM_SCHUR_HPP
#define FOAM_SCHUR_HPP

#include <map>
#include <string>
#include <vector>

#include "foam/polyring.hpp"

namespace foam {

struct YoungDiagram {
    std::vector<int> rows;  // weakly decreasing, no zeros

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> r);

    int size() const;  // number of boxes
    int length() const { return static_cast<int>(rows.size()); }
    int width() const { return rows.empty() ? 0 : rows.front(); }
    bool empty() const { return rows.empty(); }
    bool fits(int cols, int nrows) const { return width() <= cols && length() <= nrows; }
    int row(int i) const { return i < length() ? rows[i] : 0; }

    std::string to_string() const;  // "[2,1]", "[]"
    static YoungDiagram parse(const std::string& text);

    bool operator==(const YoungDiagram& o) const { return rows == o.rows; }
    bool operator!=(const YoungDiagram& o) const { return rows != o.rows; }
    bool operator<(const YoungDiagram& o) const;  // by size, then reverse lex
};

/// Rectangle with `cols` columns and `nrows` rows.
YoungDiagram rho(int cols, int nrows);
YoungDiagram conjugate(const YoungDiagram& d);
YoungDiagram complement_in(const YoungDiagram& d, int cols, int nrows);
/// (d^t)^c, lands in T(nrows, cols).
YoungDiagram dual_in(const YoungDiagram& d, int cols, int nrows);
std::vector<YoungDiagram> enumerate_box(int cols, int nrows);
/// Stack `top` above `bottom` (rows of top first); requires width(bottom) <= min row of top.
YoungDiagram stack(const YoungDiagram& top, const YoungDiagram& bottom);

/// Facet: pi_lambda on a k-labeled facet is s_{lambda^t}(k variables), so
/// column-bounded diagrams are the admissible ones. Row: plain s_lambda.
enum class Convention { Facet, Row };

/// Ordered list of distinct variable indices.
using VarSet = std::vector<int>;
VarSet make_varset(std::vector<int> v);
VarSet varset_union(const VarSet& a, const VarSet& b);
VarSet varset_intersection(const VarSet& a, const VarSet& b);
VarSet varset_difference(const VarSet& a, const VarSet& b);
bool varsets_disjoint(const VarSet& a, const VarSet& b);

bool admissible(const YoungDiagram& d, int nvars_local, Convention conv);

/// Bialternant a_{lambda+delta}/Delta, exact division.
MultiPoly schur_eval(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv);
MultiPoly schur_eval_ssyt(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv);
MultiPoly schur_eval_jt(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv);
/// Same as schur_eval but returns 0 for inadmissible diagrams (s_lambda vanishes there).
MultiPoly schur_or_zero(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv);

using LRTable = std::map<YoungDiagram, Int>;
/// c^lambda_{a b} by the lattice-word skew tableau rule.
LRTable lr_coeffs(const YoungDiagram& a, const YoungDiagram& b);
Int lr_coeff(const YoungDiagram& a, const YoungDiagram& b, const YoungDiagram& lam);

/// det(X_a^{lambda_j + |A| - j}); Row convention indexes lambda directly.
MultiPoly alternant(const YoungDiagram& d, const VarSet& A, int nvars, Convention conv = Convention::Row);
MultiPoly vandermonde(const VarSet& A, int nvars);
MultiPoly nabla(const VarSet& A, const VarSet& B, int nvars);
int inversions(const VarSet& A, const VarSet& B);  // |A<B|

/// Integer combination of diagrams used as a facet decoration.
class SchurCombo {
public:
    SchurCombo() : arity_(0) {}
    explicit SchurCombo(int arity) : arity_(arity) {}
    static SchurCombo one(int arity);
    static SchurCombo single(int arity, const YoungDiagram& d, const Int& c = 1);

    int arity() const { return arity_; }
    const std::map<YoungDiagram, Int>& terms() const { return terms_; }
    bool is_one() const;
    bool is_zero() const { return terms_.empty(); }
    /// Drops diagrams that vanish in `arity` variables under the facet convention.
    void add(const YoungDiagram& d, const Int& c);
    SchurCombo operator*(const SchurCombo& o) const;
    SchurCombo& operator+=(const SchurCombo& o);
    /// Max number of boxes of a term, -1 for zero.
    int max_boxes() const;
    bool is_homogeneous() const;
    MultiPoly evaluate(const VarSet& vars, int nvars) const;
    std::string to_string() const;
    bool operator==(const SchurCombo& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

private:
    int arity_;
    std::map<YoungDiagram, Int> terms_;
};

/// Sum over A1 ⊔ A2 = A with |A1| = a1 of
/// (-1)^{|C|(|A2|-|B2|)+|A1<A2|+|B1||B2|} nabla(A1,B2) nabla(A2,B1) Delta(A1) Delta(A2)
///   pi_{ab}(A1 B2 C L R) pi_{at}(A2 B1 C L R) / (nabla(B1,B2) Delta(A)).
struct OrthogonalityInput {
    VarSet A, B1, B2, C, L, R;
    int a1 = 0;
    YoungDiagram at, ab;
};
MultiPoly orthogonality_sum(const OrthogonalityInput& in, int nvars, Convention conv = Convention::Facet);
/// Closed form: +-1 when at is the dual of ab in T(|A1|-|B1|, |A2|-|B2|), else 0.
Int orthogonality_expected(const OrthogonalityInput& in);

/// Square-relation sum over all B1 ⊔ B2 = B and alpha in T(p,q) with
/// p = |A1t|-|B1|, q = |A2t|-|B2|, multiplied by nabla(A1t∩A2b, B), minus
/// its closed form. Zero when the identity holds.
struct SquareSumInput {
    VarSet A1t, A2t, A1b, A2b, B, C, L, R;
};
MultiPoly square_sum(const SquareSumInput& in, int nvars, Convention conv = Convention::Facet);
/// The left side only (for diagnostics).
MultiPoly square_sum_lhs(const SquareSumInput& in, int nvars, Convention conv = Convention::Facet);

}  // namespace foam

#endif
