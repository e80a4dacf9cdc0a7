/**
 * @file polyring.hpp
 * @brief Sparse multivariate integer polynomials and rational functions
 *        whose denominators are products of (X_i - X_j).
 *
 * Variables are indexed from 0 internally and printed as X1..XN.
 * Terms are kept in graded reverse-lexicographic order, X1 > ... > XN.
 */
#ifndef FOAM_POLYRING_HPP
#define FOAM_POLYRING_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "foam/errors.hpp"

namespace foam {

using Int = mpz_class;
using Rat = mpq_class;
using Exponents = std::vector<int>;

/// Strict "a comes before b" in descending grevlex order.
struct GrevlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class MultiPoly {
public:
    using TermMap = std::map<Exponents, Int, GrevlexGreater>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const Int& c);
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(const Exponents& e, const Int& c);
    /// X_i - X_j
    static MultiPoly linear(int nvars, int i, int j);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Int constant_term() const;
    Int coeff(const Exponents& e) const;

    void add_term(const Exponents& e, const Int& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Int& c);
    MultiPoly operator-() const;
    MultiPoly pow(unsigned k) const;

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Int& c) { return a *= c; }
    friend MultiPoly operator*(const Int& c, MultiPoly a) { return a *= c; }
    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Largest exponent sum, -1 for the zero polynomial.
    int total_degree() const;
    /// True (and sets exp_sum) when every term has the same exponent sum.
    /// The zero polynomial counts as homogeneous of any degree; exp_sum is left untouched.
    bool is_homogeneous(int* exp_sum = nullptr) const;

    /// Substitutes X_k -> X_{perm[k]}; perm must be injective into [0, new_nvars).
    MultiPoly rename(const std::vector<int>& perm, int new_nvars) const;
    MultiPoly swap_vars(int i, int j) const;

    /// Canonical serialization: `+c * X1^e1 ... XN^eN` per term, constants as `+c`.
    std::string to_canonical() const;
    /// Compact human form, e.g. `X1^2 - X2^2`, `-1`.
    std::string to_string() const;
    static MultiPoly parse_canonical(const std::string& text, int nvars);

private:
    int nvars_;
    TermMap terms_;
};

MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q);

/// Quotient q with q*(X_i - X_j) = p; throws NotDivisible otherwise.
MultiPoly exact_div_linear(const MultiPoly& p, int i, int j);

Rat specialize(const MultiPoly& p, const std::vector<Rat>& point);
Rat specialize(const MultiPoly& p, const std::vector<long>& point);

bool is_symmetric(const MultiPoly& p);

/// num / prod_{i<j} (X_i - X_j)^{den[(i,j)]}
class RationalFn {
public:
    using DenMap = std::map<std::pair<int, int>, int>;

    explicit RationalFn(int nvars = 0) : num_(nvars) {}
    /// Exponents may be negative (folded into the numerator) and pairs may be given
    /// in either order (a swapped pair flips the sign once per unit of exponent).
    RationalFn(MultiPoly num, const std::map<std::pair<int, int>, int>& den);

    int nvars() const { return num_.nvars(); }
    const MultiPoly& num() const { return num_; }
    const DenMap& den() const { return den_; }
    /// Sum of denominator exponents.
    int den_degree() const;

private:
    MultiPoly num_;
    DenMap den_;
};

RationalFn rf_add(const RationalFn& a, const RationalFn& b);
/// Rewrites over a larger denominator (every exponent must dominate a's).
RationalFn rf_lift(const RationalFn& a, const RationalFn::DenMap& den);
MultiPoly rf_normalize(const RationalFn& a);

}  // namespace foam

#endif
