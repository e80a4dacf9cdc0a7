#include "foam/schur.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace foam {

YoungDiagram::YoungDiagram(std::vector<int> r) : rows(std::move(r)) {
    while (!rows.empty() && rows.back() == 0) rows.pop_back();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || (i > 0 && rows[i] > rows[i - 1]))
            throw BadParameters("not a partition: " + to_string());
    }
}

int YoungDiagram::size() const { return std::accumulate(rows.begin(), rows.end(), 0); }

std::string YoungDiagram::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << rows[i];
    out << ']';
    return out.str();
}

YoungDiagram YoungDiagram::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("diagram '" + text + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<int> r;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty()) throw ParseError("diagram '" + text + "'");
        try {
            r.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw ParseError("diagram '" + text + "'");
        }
    }
    try {
        return YoungDiagram(r);
    } catch (const BadParameters& e) {
        throw ParseError(e.what());
    }
}

bool YoungDiagram::operator<(const YoungDiagram& o) const {
    int a = size(), b = o.size();
    if (a != b) return a < b;
    return rows > o.rows;
}

YoungDiagram rho(int cols, int nrows) {
    if (cols <= 0 || nrows <= 0) return {};
    return YoungDiagram(std::vector<int>(nrows, cols));
}

YoungDiagram conjugate(const YoungDiagram& d) {
    std::vector<int> c(d.width(), 0);
    for (int r : d.rows)
        for (int j = 0; j < r; ++j) ++c[j];
    return YoungDiagram(c);
}

YoungDiagram complement_in(const YoungDiagram& d, int cols, int nrows) {
    if (!d.fits(cols, nrows))
        throw DiagramTooBig(d.to_string() + " not in T(" + std::to_string(cols) + "," + std::to_string(nrows) + ")");
    std::vector<int> c(nrows);
    for (int i = 0; i < nrows; ++i) c[i] = cols - d.row(nrows - 1 - i);
    return YoungDiagram(c);
}

YoungDiagram dual_in(const YoungDiagram& d, int cols, int nrows) {
    return conjugate(complement_in(d, cols, nrows));
}

std::vector<YoungDiagram> enumerate_box(int cols, int nrows) {
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int maxpart) {
        out.emplace_back(cur);
        if (static_cast<int>(cur.size()) == nrows) return;
        for (int p = 1; p <= maxpart; ++p) {
            cur.push_back(p);
            rec(p);
            cur.pop_back();
        }
    };
    rec(std::max(cols, 0));
    if (nrows <= 0) out.assign(1, YoungDiagram());
    std::sort(out.begin(), out.end());
    return out;
}

YoungDiagram stack(const YoungDiagram& top, const YoungDiagram& bottom) {
    std::vector<int> r = top.rows;
    r.insert(r.end(), bottom.rows.begin(), bottom.rows.end());
    return YoungDiagram(r);
}

VarSet make_varset(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw SetOverlap("repeated variable");
    return v;
}

VarSet varset_union(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VarSet varset_intersection(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

VarSet varset_difference(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool varsets_disjoint(const VarSet& a, const VarSet& b) { return varset_intersection(a, b).empty(); }

bool admissible(const YoungDiagram& d, int nvars_local, Convention conv) {
    return conv == Convention::Facet ? d.width() <= nvars_local : d.length() <= nvars_local;
}

namespace {

YoungDiagram row_shape(const YoungDiagram& d, Convention conv) {
    return conv == Convention::Facet ? conjugate(d) : d;
}

void check_vars(const VarSet& vars, int nvars) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] < 0 || vars[i] >= nvars) throw BadParameters("variable index out of range");
        if (i > 0 && vars[i] <= vars[i - 1]) throw BadParameters("VarSet must be strictly increasing");
    }
}

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

/// det(x_i^{e_j}) in k local variables.
MultiPoly monomial_det(const std::vector<int>& exps) {
    const int k = static_cast<int>(exps.size());
    MultiPoly r(k);
    std::vector<int> p = identity_perm(k);
    Exponents e(k);
    do {
        for (int i = 0; i < k; ++i) e[i] = exps[p[i]];
        r.add_term(e, perm_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
    return r;
}

/// Schur polynomial of a row shape in k local variables via the bialternant.
MultiPoly local_schur(const YoungDiagram& lam, int k) {
    if (lam.length() > k) return MultiPoly(k);
    if (k == 0) return MultiPoly::constant(0, 1);
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, int>, MultiPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({lam.rows, k});
        if (it != cache.end()) return it->second;
    }
    std::vector<int> ex(k);
    for (int j = 0; j < k; ++j) ex[j] = lam.row(j) + k - 1 - j;
    MultiPoly num = monomial_det(ex);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) num = exact_div_linear(num, i, j);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(lam.rows, k), num);
    return num;
}

MultiPoly place(const MultiPoly& local, const VarSet& vars, int nvars) {
    return local.rename(vars, nvars);
}

/// Complete homogeneous h_m in k local variables.
MultiPoly local_h(int m, int k) {
    if (m < 0) return MultiPoly(k);
    MultiPoly r(k);
    Exponents e(k, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == k - 1) {
            e[i] = left;
            r.add_term(e, 1);
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[i] = x;
            rec(i + 1, left - x);
        }
    };
    if (k == 0) return m == 0 ? MultiPoly::constant(0, 1) : MultiPoly(0);
    rec(0, m);
    return r;
}

MultiPoly poly_det(std::vector<std::vector<MultiPoly>> m, int nv) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return MultiPoly::constant(nv, 1);
    MultiPoly r(nv);
    std::vector<int> p = identity_perm(n);
    do {
        MultiPoly t = MultiPoly::constant(nv, perm_sign(p));
        for (int i = 0; i < n && !t.is_zero(); ++i) t *= m[i][p[i]];
        r += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return r;
}

}  // namespace

MultiPoly schur_eval(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv) {
    check_vars(vars, nvars);
    const int k = static_cast<int>(vars.size());
    if (!admissible(d, k, conv))
        throw InadmissibleDiagram(d.to_string() + " in " + std::to_string(k) + " variables");
    return place(local_schur(row_shape(d, conv), k), vars, nvars);
}

MultiPoly schur_or_zero(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv) {
    if (!admissible(d, static_cast<int>(vars.size()), conv)) return MultiPoly(nvars);
    return schur_eval(d, vars, nvars, conv);
}

MultiPoly schur_eval_ssyt(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv) {
    check_vars(vars, nvars);
    const int k = static_cast<int>(vars.size());
    if (!admissible(d, k, conv))
        throw InadmissibleDiagram(d.to_string() + " in " + std::to_string(k) + " variables");
    YoungDiagram lam = row_shape(d, conv);
    MultiPoly r(nvars);
    if (lam.empty()) return MultiPoly::constant(nvars, 1);
    // cells in row-major order, values 0..k-1
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < lam.length(); ++i)
        for (int j = 0; j < lam.rows[i]; ++j) cells.emplace_back(i, j);
    std::vector<std::vector<int>> t(lam.length());
    for (int i = 0; i < lam.length(); ++i) t[i].assign(lam.rows[i], -1);
    Exponents e(nvars, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            r.add_term(e, 1);
            return;
        }
        auto [i, j] = cells[c];
        int lo = 0;
        if (j > 0) lo = std::max(lo, t[i][j - 1]);
        if (i > 0) lo = std::max(lo, t[i - 1][j] + 1);
        for (int v = lo; v < k; ++v) {
            t[i][j] = v;
            ++e[vars[v]];
            rec(c + 1);
            --e[vars[v]];
        }
        t[i][j] = -1;
    };
    rec(0);
    return r;
}

MultiPoly schur_eval_jt(const YoungDiagram& d, const VarSet& vars, int nvars, Convention conv) {
    check_vars(vars, nvars);
    const int k = static_cast<int>(vars.size());
    if (!admissible(d, k, conv))
        throw InadmissibleDiagram(d.to_string() + " in " + std::to_string(k) + " variables");
    YoungDiagram lam = row_shape(d, conv);
    const int l = lam.length();
    std::vector<std::vector<MultiPoly>> m(l, std::vector<MultiPoly>(l, MultiPoly(k)));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) m[i][j] = local_h(lam.rows[i] - i + j, k);
    return place(poly_det(m, k), vars, nvars);
}

LRTable lr_coeffs(const YoungDiagram& a, const YoungDiagram& b) {
    LRTable out;
    const int total = b.size();
    const int maxrows = a.length() + b.length();
    std::vector<int> shape;             // rows of lambda built so far
    std::vector<std::vector<int>> fill;  // labels of skew cells per row (1-based labels)
    std::vector<int> used(b.length() + 2, 0);
    std::function<void(int, int)> rec = [&](int r, int placed) {
        if (placed == total && r >= a.length()) {
            out[YoungDiagram(shape)] += 1;
            return;
        }
        if (r >= maxrows) return;
        const int ar = a.row(r);
        const int maxlen = r == 0 ? ar + (total - placed) : std::min(shape[r - 1], ar + (total - placed));
        for (int len = ar; len <= maxlen; ++len) {
            const int cnt = len - ar;
            std::vector<int> row(cnt);
            // fill cells left to right, weakly increasing, strict against the row above
            std::function<void(int)> cell = [&](int c) {
                if (c == cnt) {
                    // lattice check: read this row right to left
                    std::vector<int> u = used;
                    for (int x = cnt - 1; x >= 0; --x) {
                        int lab = row[x];
                        ++u[lab];
                        if (lab > 1 && u[lab] > u[lab - 1]) return;
                    }
                    for (int lab = 1; lab <= b.length(); ++lab)
                        if (u[lab] > b.row(lab - 1)) return;
                    auto saved = used;
                    used = u;
                    shape.push_back(len);
                    fill.push_back(row);
                    rec(r + 1, placed + cnt);
                    fill.pop_back();
                    shape.pop_back();
                    used = saved;
                    return;
                }
                const int col = ar + c;
                int lo = c > 0 ? row[c - 1] : 1;
                if (r > 0 && col < shape[r - 1] && col >= a.row(r - 1)) {
                    lo = std::max(lo, fill[r - 1][col - a.row(r - 1)] + 1);
                }
                for (int lab = lo; lab <= b.length(); ++lab) {
                    row[c] = lab;
                    cell(c + 1);
                }
            };
            if (len == 0 && r >= a.length()) continue;  // an empty row ends the shape
            cell(0);
        }
    };
    if (total == 0) {
        out[a] = 1;
        return out;
    }
    rec(0, 0);
    for (auto it = out.begin(); it != out.end();) {
        if (it->first.size() != a.size() + b.size())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

Int lr_coeff(const YoungDiagram& a, const YoungDiagram& b, const YoungDiagram& lam) {
    auto t = lr_coeffs(a, b);
    auto it = t.find(lam);
    return it == t.end() ? Int(0) : it->second;
}

MultiPoly alternant(const YoungDiagram& d, const VarSet& A, int nvars, Convention conv) {
    check_vars(A, nvars);
    const int k = static_cast<int>(A.size());
    if (!admissible(d, k, conv)) throw InadmissibleDiagram(d.to_string() + " alternant");
    YoungDiagram lam = row_shape(d, conv);
    std::vector<int> ex(k);
    for (int j = 0; j < k; ++j) ex[j] = lam.row(j) + k - 1 - j;
    if (k == 0) return MultiPoly::constant(nvars, 1);
    return place(monomial_det(ex), A, nvars);
}

MultiPoly vandermonde(const VarSet& A, int nvars) {
    check_vars(A, nvars);
    MultiPoly r = MultiPoly::constant(nvars, 1);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) r *= MultiPoly::linear(nvars, A[i], A[j]);
    return r;
}

MultiPoly nabla(const VarSet& A, const VarSet& B, int nvars) {
    check_vars(A, nvars);
    check_vars(B, nvars);
    if (!varsets_disjoint(A, B)) throw SetOverlap("nabla");
    MultiPoly r = MultiPoly::constant(nvars, 1);
    for (int a : A)
        for (int b : B) r *= MultiPoly::linear(nvars, a, b);
    return r;
}

int inversions(const VarSet& A, const VarSet& B) {
    if (!varsets_disjoint(A, B)) throw SetOverlap("inversions");
    int n = 0;
    for (int a : A)
        for (int b : B)
            if (a < b) ++n;
    return n;
}

SchurCombo SchurCombo::one(int arity) { return single(arity, YoungDiagram(), 1); }

SchurCombo SchurCombo::single(int arity, const YoungDiagram& d, const Int& c) {
    SchurCombo s(arity);
    s.add(d, c);
    return s;
}

bool SchurCombo::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

void SchurCombo::add(const YoungDiagram& d, const Int& c) {
    if (c == 0 || !admissible(d, arity_, Convention::Facet)) return;
    auto [it, ins] = terms_.try_emplace(d, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SchurCombo SchurCombo::operator*(const SchurCombo& o) const {
    if (arity_ != o.arity_) throw ArityMismatch("SchurCombo product");
    SchurCombo r(arity_);
    for (const auto& [d1, c1] : terms_)
        for (const auto& [d2, c2] : o.terms_)
            for (const auto& [lam, m] : lr_coeffs(d1, d2)) r.add(lam, c1 * c2 * m);
    return r;
}

SchurCombo& SchurCombo::operator+=(const SchurCombo& o) {
    if (arity_ != o.arity_) throw ArityMismatch("SchurCombo sum");
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

int SchurCombo::max_boxes() const {
    int m = -1;
    for (const auto& [d, c] : terms_) m = std::max(m, d.size());
    return m;
}

bool SchurCombo::is_homogeneous() const {
    if (terms_.empty()) return true;
    int s = terms_.begin()->first.size();
    for (const auto& [d, c] : terms_)
        if (d.size() != s) return false;
    return true;
}

MultiPoly SchurCombo::evaluate(const VarSet& vars, int nvars) const {
    if (static_cast<int>(vars.size()) != arity_) throw ArityMismatch("decoration arity vs color size");
    MultiPoly r(nvars);
    for (const auto& [d, c] : terms_) r += schur_eval(d, vars, nvars, Convention::Facet) * c;
    return r;
}

std::string SchurCombo::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c.get_str() << "*pi" << d.to_string();
    }
    return out.str();
}

namespace {

void require_disjoint(const std::vector<const VarSet*>& sets) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!varsets_disjoint(*sets[i], *sets[j])) throw SetOverlap("parameter sets must be disjoint");
}

/// All subsets of `s` of size k, in lexicographic order.
std::vector<VarSet> subsets_of_size(const VarSet& s, int k) {
    std::vector<VarSet> out;
    const int n = static_cast<int>(s.size());
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        VarSet v;
        for (int i : idx) v.push_back(s[i]);
        out.push_back(v);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

RationalFn::DenMap den_of_vandermonde(const VarSet& A) {
    RationalFn::DenMap d;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) d[{A[i], A[j]}] += 1;
    return d;
}

void add_nabla_den(RationalFn::DenMap& d, const VarSet& A, const VarSet& B) {
    for (int a : A)
        for (int b : B) d[{a, b}] += 1;
}

int sgn_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

MultiPoly orthogonality_sum(const OrthogonalityInput& in, int nvars, Convention conv) {
    require_disjoint({&in.A, &in.B1, &in.B2, &in.C, &in.L, &in.R});
    const int a = static_cast<int>(in.A.size());
    if (in.a1 < 0 || in.a1 > a) throw BadParameters("a1 out of range");
    const int b1 = static_cast<int>(in.B1.size()), b2 = static_cast<int>(in.B2.size());
    const int c = static_cast<int>(in.C.size());
    if (in.a1 < b1 || a - in.a1 < b2) throw BadParameters("orthogonality box has negative size");
    VarSet common = varset_union(varset_union(in.C, in.L), in.R);
    RationalFn total(nvars);
    for (const VarSet& A1 : subsets_of_size(in.A, in.a1)) {
        VarSet A2 = varset_difference(in.A, A1);
        // Delta in this sum is prod_{i<j}(x_j - x_i); vandermonde() uses the opposite sign,
        // and the ratio Delta(A1)Delta(A2)/Delta(A) differs by (-1)^{|A1||A2|}.
        long e = static_cast<long>(c) * (static_cast<long>(A2.size()) - b2) + inversions(A1, A2) +
                 static_cast<long>(b1) * b2 + static_cast<long>(A1.size()) * static_cast<long>(A2.size());
        MultiPoly num = MultiPoly::constant(nvars, sgn_pow(e));
        num *= nabla(A1, in.B2, nvars);
        num *= nabla(A2, in.B1, nvars);
        num *= vandermonde(A1, nvars);
        num *= vandermonde(A2, nvars);
        num *= schur_or_zero(in.ab, varset_union(varset_union(A1, in.B2), common), nvars, conv);
        if (num.is_zero()) continue;
        num *= schur_or_zero(in.at, varset_union(varset_union(A2, in.B1), common), nvars, conv);
        if (num.is_zero()) continue;
        RationalFn::DenMap den = den_of_vandermonde(in.A);
        add_nabla_den(den, in.B1, in.B2);
        total = rf_add(total, RationalFn(num, den));
    }
    return rf_normalize(total);
}

Int orthogonality_expected(const OrthogonalityInput& in) {
    const int a1 = in.a1, a2 = static_cast<int>(in.A.size()) - in.a1;
    const int b1 = static_cast<int>(in.B1.size()), b2 = static_cast<int>(in.B2.size());
    const int c = static_cast<int>(in.C.size());
    const int p = a1 - b1, q = a2 - b2;
    if (p < 0 || q < 0) return 0;
    if (!in.ab.fits(p, q)) return 0;
    if (in.at != dual_in(in.ab, p, q)) return 0;
    long e = static_cast<long>(c) * (a2 - b2) + static_cast<long>(a2) * a1 + static_cast<long>(b1) * b2 +
             static_cast<long>(b2) * (a1 - b1) + in.ab.size();
    return sgn_pow(e);
}

MultiPoly square_sum_lhs(const SquareSumInput& in, int nvars, Convention conv) {
    require_disjoint({&in.A1t, &in.A2t, &in.B, &in.C, &in.L, &in.R});
    require_disjoint({&in.A1b, &in.A2b, &in.B, &in.C, &in.L, &in.R});
    if (varset_union(in.A1t, in.A2t) != varset_union(in.A1b, in.A2b) || in.A1t.size() != in.A1b.size())
        throw BadParameters("top and bottom splittings of A must have equal parts");
    const VarSet A11 = varset_intersection(in.A1t, in.A1b);
    const VarSet A22 = varset_intersection(in.A2t, in.A2b);
    const VarSet A12 = varset_intersection(in.A1t, in.A2b);
    const VarSet common = varset_union(varset_union(in.C, in.L), in.R);
    const long c = static_cast<long>(in.C.size());
    const int b = static_cast<int>(in.B.size());
    bool feasible = false;
    for (int b1 = 0; b1 <= b; ++b1)
        feasible |= static_cast<int>(in.A1t.size()) >= b1 && static_cast<int>(in.A2t.size()) >= b - b1;
    if (!feasible) throw BadParameters("no splitting of B gives a nonempty diagram box");
    RationalFn total(nvars);
    for (int b1 = 0; b1 <= b; ++b1) {
        const int b2 = b - b1;
        const int p = static_cast<int>(in.A1t.size()) - b1;
        const int q = static_cast<int>(in.A2t.size()) - b2;
        if (p < 0 || q < 0) continue;
        for (const VarSet& B1 : subsets_of_size(in.B, b1)) {
            VarSet B2 = varset_difference(in.B, B1);
            for (const YoungDiagram& alpha : enumerate_box(p, q)) {
                const YoungDiagram hat = dual_in(alpha, p, q);
                // (-1)^{|hat|} and the |B1||B2| term come from the dual Cauchy expansion and from
                // rewriting Delta(B1)Delta(B2)/Delta(B) as 1/nabla(B1,B2).
                long e = hat.size() + static_cast<long>(b1) * b2 + c * (static_cast<long>(in.A2t.size()) - static_cast<long>(A22.size())) +
                         static_cast<long>(b1) * (static_cast<long>(in.A2t.size()) - b2);
                MultiPoly num = MultiPoly::constant(nvars, sgn_pow(e));
                num *= nabla(A11, B2, nvars);
                num *= nabla(A22, B1, nvars);
                num *= schur_or_zero(alpha, varset_union(varset_union(in.A1t, B2), common), nvars, conv);
                if (num.is_zero()) continue;
                num *= schur_or_zero(hat, varset_union(varset_union(in.A2b, B1), common), nvars, conv);
                if (num.is_zero()) continue;
                num *= nabla(A12, in.B, nvars);
                RationalFn::DenMap den;
                add_nabla_den(den, A11, A22);
                add_nabla_den(den, B1, B2);
                total = rf_add(total, RationalFn(num, den));
            }
        }
    }
    return rf_normalize(total);
}

MultiPoly square_sum(const SquareSumInput& in, int nvars, Convention conv) {
    MultiPoly lhs = square_sum_lhs(in, nvars, conv);
    const VarSet A11 = varset_intersection(in.A1t, in.A1b);
    const VarSet A22 = varset_intersection(in.A2t, in.A2b);
    const VarSet A12 = varset_intersection(in.A1t, in.A2b);
    const VarSet A21 = varset_intersection(in.A2t, in.A1b);
    MultiPoly rhs(nvars);
    if (A12.empty()) {
        // nabla(A1t, A2b) carries a vanishing factor as soon as the two sets meet
        long e = static_cast<long>(in.C.size()) * (static_cast<long>(in.A2t.size()) - static_cast<long>(A22.size()));
        RationalFn::DenMap den;
        add_nabla_den(den, A11, A22);
        add_nabla_den(den, A21, A12);
        rhs = rf_normalize(RationalFn(nabla(in.A1t, in.A2b, nvars) * Int(sgn_pow(e)), den));
    }
    return lhs - rhs;
}

}  // namespace foam
