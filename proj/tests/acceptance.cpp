/**
 * @file acceptance.cpp
 * @brief Acceptance suite: one PASS/FAIL line per criterion, checked against
 *        closed forms and independent oracles. Time limits are part of the
 *        criteria; a run over its limit fails.
 *
 * Usage: acceptance [--jobs J] [--only K]
 */
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "foam/foamzoo.hpp"

using namespace foam;

namespace {

int g_jobs = 1;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> problems;

    void fail(const std::string& what) {
        pass = false;
        if (problems.size() < 5) problems.push_back(what);
    }
};

SchurCombo pi(int a, const YoungDiagram& d) { return SchurCombo::single(a, d); }
int sgn(long e) { return e % 2 == 0 ? 1 : -1; }
VarSet first_vars(int k) {
    VarSet v;
    for (int i = 0; i < k; ++i) v.push_back(i);
    return v;
}

// Independent integer oracles.
Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
Int multinomial(const std::vector<int>& a) {
    int n = 0;
    Int den = 1;
    for (int x : a) {
        n += x;
        den *= factorial(x);
    }
    return factorial(n) / den;
}

void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        if (cur.size() >= 2) out.push_back(cur);
        return;
    }
    for (int x = 1; x <= n; ++x) {
        cur.push_back(x);
        compositions(n - x, cur, out);
        cur.pop_back();
    }
}

// 1. theta foams against the closed form
Outcome theta_formula() {
    Outcome o;
    long cases = 0, nonzero = 0;
    for (int N = 2; N <= 4; ++N)
        for (int a = 1; a < N; ++a)
            for (int b = 1; a + b <= N; ++b) {
                const int c = N - a - b;
                for (const auto& al : enumerate_box(a, b))
                    for (const auto& be : enumerate_box(b, a))
                        for (const auto& ga : enumerate_box(a + b, c)) {
                            if (al.size() + be.size() + ga.size() > 2 * N) continue;
                            ++cases;
                            int want = 0;
                            if (dual_in(be, b, a) == al && ga == rho(a + b, c))
                                want = sgn((a + b) * (a + b + 1) / 2 + al.size());
                            const MultiPoly got = eval(build_theta(a, b, pi(a, al), pi(b, be), pi(a + b, ga), N));
                            if (want) ++nonzero;
                            if (got != MultiPoly::constant(N, want))
                                o.fail("N=" + std::to_string(N) + " theta(" + std::to_string(a) + "," +
                                       std::to_string(b) + ") " + al.to_string() + be.to_string() + ga.to_string() +
                                       ": got " + got.to_string() + ", want " + std::to_string(want));
                        }
            }
    o.detail = std::to_string(cases) + " decorated thetas, " + std::to_string(nonzero) + " nonzero";
    return o;
}

// 2. spheres against the closed form
Outcome sphere_formula() {
    Outcome o;
    long cases = 0, poly_valued = 0;
    for (int N = 1; N <= 4; ++N)
        for (int a = 1; a <= std::min(2, N); ++a)
            for (const auto& al : enumerate_box(a, N)) {
                ++cases;
                // al = rho(a, N-a) on top of beta
                MultiPoly want(N);
                bool top_full = al.length() >= N - a;
                for (int r = 0; r < N - a && top_full; ++r) top_full = al.row(r) == a;
                if (top_full) {
                    std::vector<int> rest(al.rows.begin() + (N - a), al.rows.end());
                    const YoungDiagram beta(rest);
                    want = sgn(a * (a + 1) / 2) * schur_eval(beta, first_vars(N), N, Convention::Facet);
                    if (!want.is_constant()) ++poly_valued;
                }
                const MultiPoly got = eval(build_sphere(a, pi(a, al), N));
                if (got != want)
                    o.fail("N=" + std::to_string(N) + " a=" + std::to_string(a) + " " + al.to_string() + ": got " +
                           got.to_string() + ", want " + want.to_string());
            }
    o.detail = std::to_string(cases) + " spheres, " + std::to_string(poly_valued) + " polynomial-valued";
    return o;
}

// 3. LR coefficients from foams against the combinatorial rule
Outcome lr_reproduction() {
    Outcome o;
    long full = 0, nonzero = 0;
    const auto box2 = enumerate_box(2, 2);
    for (const auto& al : box2)
        for (const auto& be : box2)
            for (const auto& la : box2) {
                if (al.size() + be.size() != la.size()) continue;
                ++full;
                const Int f = lr_via_foam(al, be, la, 2, 2), want = lr_coeff(al, be, la);
                if (want != 0) ++nonzero;
                if (f != want)
                    o.fail(la.to_string() + "/" + al.to_string() + be.to_string() + ": foam " + f.get_str() +
                           ", rule " + want.get_str());
            }
    std::mt19937_64 rng(20160915);
    const auto box3 = enumerate_box(3, 3);
    long sampled = 0, sampled_nonzero = 0;
    while (sampled < 50) {
        const YoungDiagram& al = box3[rng() % box3.size()];
        const YoungDiagram& be = box3[rng() % box3.size()];
        std::vector<YoungDiagram> targets;
        for (const auto& la : box3)
            if (la.size() == al.size() + be.size()) targets.push_back(la);
        if (targets.empty()) continue;
        const YoungDiagram& la = targets[rng() % targets.size()];
        ++sampled;
        const Int f = lr_via_foam(al, be, la, 3, 3), want = lr_coeff(al, be, la);
        if (want != 0) ++sampled_nonzero;
        if (f != want)
            o.fail("3x3 " + la.to_string() + "/" + al.to_string() + be.to_string() + ": foam " + f.get_str() +
                   ", rule " + want.get_str());
    }
    o.detail = std::to_string(full) + " triples in 2x2 (" + std::to_string(nonzero) + " nonzero), " +
               std::to_string(sampled) + " sampled in 3x3 (" + std::to_string(sampled_nonzero) + " nonzero)";
    return o;
}

// 4. eval(G x S^1) = coloring count = graded rank at q = 1
Outcome graded_rank_chain() {
    Outcome o;
    long cases = 0;
    auto check = [&](const MoyGraph& G, const LaurentPoly& rank, const Int& oracle, const std::string& name) {
        ++cases;
        const Int count = moy_coloring_count(G);
        const MultiPoly ev = eval(build_graph_times_circle(G));
        if (count != oracle || rank.at_one() != oracle || ev != MultiPoly::constant(G.N, oracle))
            o.fail(name + ": eval " + ev.to_string() + ", count " + count.get_str() + ", rank(1) " +
                   rank.at_one().get_str() + ", want " + oracle.get_str());
    };
    for (int N = 1; N <= 4; ++N)
        for (int k = 1; k <= N; ++k)
            check(MoyGraph::circle(k, N), qbinom(N, k), multinomial({k, N - k}),
                  "circle " + std::to_string(k) + " N=" + std::to_string(N));
    for (int N = 2; N <= 4; ++N) {
        std::vector<std::vector<int>> all;
        std::vector<int> cur;
        compositions(N, cur, all);
        for (const auto& a : all) {
            std::string name = "theta(";
            for (std::size_t i = 0; i < a.size(); ++i) name += (i ? "," : "") + std::to_string(a[i]);
            check(MoyGraph::theta(a), graded_rank_theta(a), multinomial(a), name + ")");
        }
    }
    o.detail = std::to_string(cases) + " webs";
    return o;
}

// 5. Gram matrix of basis against dual basis
Outcome gram_identity() {
    Outcome o;
    std::ostringstream sizes;
    for (const std::vector<int>& a : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {1, 1, 1}, {2, 2}}) {
        int N = 0;
        for (int x : a) N += x;
        const auto rows = theta_basis(a), cols = theta_dual_basis(a);
        if (Int(static_cast<long>(rows.size())) != multinomial(a)) o.fail("basis size differs from N!/prod a_i!");
        const auto G = gram_matrix(a, rows, cols, g_jobs);
        for (std::size_t i = 0; i < G.size(); ++i)
            for (std::size_t j = 0; j < G[i].size(); ++j)
                if (G[i][j] != MultiPoly::constant(N, i == j ? 1 : 0))
                    o.fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + G[i][j].to_string());
        sizes << (sizes.tellp() > 0 ? ", " : "") << rows.size() << "x" << rows.size();
    }
    o.detail = "matrices " + sizes.str();
    return o;
}

// 6. local relations under all closures with D = 2N, plus idempotents
Outcome relation_suite() {
    Outcome o;
    long relations = 0, closures = 0, idem = 0;
    for (int N = 1; N <= 3; ++N)
        for (const std::string& id : relation_ids()) {
            const auto p = default_params(id, N);
            if (p.empty()) continue;
            const Relation R = build_relation(id, p, N);
            const RelationReport rep = verify_relation(R, 2 * N, g_jobs);
            ++relations;
            closures += rep.closures;
            idem += rep.idempotent_checks;
            const bool needs_idem = id == "square" || id == "neck-cutting" || id == "digon" || id == "joint";
            if (!rep.ok() || rep.closures == 0)
                o.fail(id + " N=" + std::to_string(N) + ": " + std::to_string(rep.failures) + "/" +
                       std::to_string(rep.closures) + " closures fail, " + std::to_string(rep.idempotent_failures) +
                       " idempotent failures");
            if (needs_idem && rep.idempotent_checks == 0) o.fail(id + " N=" + std::to_string(N) + ": no idempotent test");
        }
    o.detail = std::to_string(relations) + " relations, " + std::to_string(closures) + " closures, " +
               std::to_string(idem) + " idempotent checks";
    return o;
}

// 7. coloring lemmas over the zoo
Outcome kempe_lemmas() {
    Outcome o;
    std::array<long, 5> checks{};
    long foams = 0, colorings = 0;
    for (int N = 1; N <= 3; ++N)
        for (const ZooEntry& z : zoo(N)) {
            ++foams;
            const LemmaReport rep = check_coloring_lemmas(z.foam, static_cast<std::uint64_t>(N));
            colorings += rep.colorings;
            for (int k = 0; k < 5; ++k) checks[k] += rep.checks[k];
            if (!rep.ok()) o.fail("N=" + std::to_string(N) + " " + z.name + ": " + rep.messages.front());
        }
    for (int k = 0; k < 5; ++k)
        if (checks[k] == 0) o.fail("lemma " + std::to_string(k) + " was never exercised");
    o.detail = std::to_string(foams) + " foams, " + std::to_string(colorings) + " colorings, checks";
    for (int k = 0; k < 5; ++k) o.detail += (k ? "/" : " ") + std::to_string(checks[k]);
    return o;
}

// 8. random zoo foams: polynomial, symmetric, right degree, equal to the numeric state sum
Outcome random_foams() {
    Outcome o;
    long nonzero = 0;
    std::mt19937_64 rng(77);
    for (int s = 1; s <= 100; ++s) {
        const int N = 2 + s % 3;
        const std::string name = "seed " + std::to_string(s) + " N=" + std::to_string(N);
        try {
            const Foam F = random_zoo_foam(static_cast<std::uint64_t>(s), N);
            EvalOptions opts;
            opts.jobs = g_jobs;
            const EvalResult r = eval_full(F, opts);
            if (!is_symmetric(r.value)) o.fail(name + ": not symmetric");
            if (!r.value.is_zero()) {
                ++nonzero;
                int e = 0;
                if (!r.value.is_homogeneous(&e) || 2 * e != foam_degree(F))
                    o.fail(name + ": degree " + std::to_string(foam_degree(F)) + ", value " + r.value.to_string());
            }
            std::vector<Rat> pt;
            for (int i = 0; i < N; ++i) pt.push_back(Rat(static_cast<long>(i * 7 + 1 + rng() % 5)));
            if (eval_numeric(F, pt) != specialize(r.value, pt)) o.fail(name + ": numeric state sum differs");
        } catch (const std::exception& e) {
            o.fail(name + ": " + e.what());
        }
    }
    o.detail = "100 foams, " + std::to_string(nonzero) + " nonzero";
    return o;
}

// 9. Schur algorithms agree; LR rule reproduces products
Outcome schur_engine() {
    Outcome o;
    long evals = 0, products = 0;
    for (const auto& d : enumerate_box(3, 3))
        for (int k = 0; k <= 4; ++k)
            for (auto conv : {Convention::Row, Convention::Facet}) {
                if (!admissible(d, k, conv)) continue;
                ++evals;
                const VarSet vs = first_vars(k);
                const MultiPoly a = schur_eval(d, vs, 4, conv);
                if (a != schur_eval_ssyt(d, vs, 4, conv) || a != schur_eval_jt(d, vs, 4, conv))
                    o.fail(d.to_string() + " in " + std::to_string(k) + " variables");
            }
    const VarSet vs = first_vars(4);
    for (const auto& a : enumerate_box(3, 3))
        for (const auto& b : enumerate_box(2, 2)) {
            if (a.size() + b.size() > 6) continue;
            ++products;
            const MultiPoly lhs = schur_eval(a, vs, 4, Convention::Row) * schur_eval(b, vs, 4, Convention::Row);
            MultiPoly rhs(4);
            for (const auto& [la, c] : lr_coeffs(a, b)) rhs += c * schur_or_zero(la, vs, 4, Convention::Row);
            if (lhs != rhs) o.fail("s" + a.to_string() + " s" + b.to_string());
        }
    o.detail = std::to_string(evals) + " evaluations, " + std::to_string(products) + " products";
    return o;
}

// 10. orthogonality and square sums, every instance with at most six variables
Outcome appendix_sums() {
    Outcome o;
    long orth = 0, orth_nonzero = 0, square = 0;
    auto take = [](int& v, int k) {
        VarSet s;
        for (int i = 0; i < k; ++i) s.push_back(v++);
        return s;
    };
    for (int nA = 0; nA <= 6; ++nA)
        for (int nB1 = 0; nA + nB1 <= 6; ++nB1)
            for (int nB2 = 0; nA + nB1 + nB2 <= 6; ++nB2)
                for (int nC = 0; nA + nB1 + nB2 + nC <= 6; ++nC)
                    for (int nL = 0; nA + nB1 + nB2 + nC + nL <= 6; ++nL)
                        for (int nR = 0; nA + nB1 + nB2 + nC + nL + nR <= 6; ++nR)
                            for (int a1 = 0; a1 <= nA; ++a1) {
                                const int p = a1 - nB1, q = nA - a1 - nB2;
                                if (p < 0 || q < 0) continue;
                                int v = 0;
                                OrthogonalityInput in;
                                in.A = take(v, nA);
                                in.B1 = take(v, nB1);
                                in.B2 = take(v, nB2);
                                in.C = take(v, nC);
                                in.L = take(v, nL);
                                in.R = take(v, nR);
                                in.a1 = a1;
                                for (const auto& ab : enumerate_box(p, q))
                                    for (const auto& at : enumerate_box(q, p)) {
                                        in.ab = ab;
                                        in.at = at;
                                        ++orth;
                                        int want = 0;
                                        if (at == dual_in(ab, p, q)) {
                                            const int a2 = nA - a1;
                                            want = sgn(nC * (a2 - nB2) + a2 * a1 + nB1 * nB2 + nB2 * (a1 - nB1) +
                                                       ab.size());
                                            ++orth_nonzero;
                                        }
                                        const MultiPoly got = orthogonality_sum(in, v);
                                        if (got != MultiPoly::constant(v, want))
                                            o.fail("orthogonality |A|=" + std::to_string(nA) + " a1=" +
                                                   std::to_string(a1) + " " + ab.to_string() + at.to_string() +
                                                   ": " + got.to_string());
                                    }
                            }
    for (int nA = 0; nA <= 6; ++nA)
        for (int nB = 0; nA + nB <= 6; ++nB)
            for (int nC = 0; nA + nB + nC <= 6; ++nC)
                for (int nL = 0; nA + nB + nC + nL <= 6; ++nL)
                    for (int nR = 0; nA + nB + nC + nL + nR <= 6; ++nR) {
                        int v = 0;
                        const VarSet A = take(v, nA), B = take(v, nB), C = take(v, nC), L = take(v, nL),
                                     R = take(v, nR);
                        for (unsigned mt = 0; mt < (1u << nA); ++mt)
                            for (unsigned mb = 0; mb < (1u << nA); ++mb) {
                                if (__builtin_popcount(mt) != __builtin_popcount(mb)) continue;
                                SquareSumInput in;
                                in.B = B;
                                in.C = C;
                                in.L = L;
                                in.R = R;
                                for (int i = 0; i < nA; ++i) {
                                    ((mt >> i) & 1 ? in.A1t : in.A2t).push_back(A[i]);
                                    ((mb >> i) & 1 ? in.A1b : in.A2b).push_back(A[i]);
                                }
                                // some splitting of B must leave both alpha boxes nonnegative
                                bool feasible = false;
                                for (int b1 = 0; b1 <= nB; ++b1)
                                    feasible = feasible || (static_cast<int>(in.A1t.size()) >= b1 &&
                                                            static_cast<int>(in.A2t.size()) >= nB - b1);
                                if (!feasible) continue;
                                ++square;
                                const MultiPoly d = square_sum(in, v);
                                if (!d.is_zero())
                                    o.fail("square |A|=" + std::to_string(nA) + " |B|=" + std::to_string(nB) +
                                           ": residue " + d.to_string());
                            }
                    }
    o.detail = std::to_string(orth) + " orthogonality sums (" + std::to_string(orth_nonzero) + " nonzero), " +
               std::to_string(square) + " square sums";
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--jobs")
            g_jobs = std::max(1, std::atoi(argv[i + 1]));
        else if (flag == "--only")
            only = std::atoi(argv[i + 1]);
    }
    const std::vector<Criterion> all = {
        {1, "theta formula", 120, theta_formula},
        {2, "sphere formula", 60, sphere_formula},
        {3, "LR reproduction", 600, lr_reproduction},
        {4, "graded-rank chain", 60, graded_rank_chain},
        {5, "Gram identity", 300, gram_identity},
        {6, "relation suite", 900, relation_suite},
        {7, "Kempe and structure lemmas", 120, kempe_lemmas},
        {8, "random foams: polynomial, symmetric, degree", 600, random_foams},
        {9, "Schur engine cross-validation", 60, schur_engine},
        {10, "orthogonality and square sums", 300, appendix_sums},
    };
    int failed = 0;
    for (const Criterion& c : all) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > c.limit_s) o.fail("over the time limit");
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
                  << std::fixed << std::setprecision(1) << s << " s, limit " << c.limit_s << " s)\n";
        for (const auto& p : o.problems) std::cout << "     " << p << "\n";
        std::cout.flush();
    }
    return failed ? 1 : 0;
}
