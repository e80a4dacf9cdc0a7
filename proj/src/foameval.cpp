#include "foam/foameval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace foam {

int s_invariant(const Foam& F, const Coloring& c) {
    long s = 0;
    for (int i = 0; i < F.N; ++i) s += static_cast<long>(i + 1) * (monochrome_euler(F, c, i) / 2);
    for (int i = 0; i < F.N; ++i)
        for (int j = i + 1; j < F.N; ++j) s += theta_counts(F, c, i, j).positive;
    return static_cast<int>(s);
}

namespace {

// Decoration values per (facet, pigment set), filled on demand.
using DecorationCache = std::vector<std::map<PigmentSet, MultiPoly>>;

ColoredValue colored_value_cached(const Foam& F, const Coloring& c, DecorationCache* cache) {
    ColoredValue v;
    v.sign_exp = s_invariant(F, c);
    v.P = MultiPoly::constant(F.N, 1);
    for (std::size_t f = 0; f < F.facets.size() && !v.P.is_zero(); ++f) {
        const SchurCombo& d = F.facets[f].decoration;
        if (d.is_one()) continue;
        if (!cache) {
            v.P *= d.evaluate(pigments_of(c[f]), F.N);
            continue;
        }
        auto& slot = (*cache)[f];
        auto it = slot.find(c[f]);
        if (it == slot.end()) it = slot.emplace(c[f], d.evaluate(pigments_of(c[f]), F.N)).first;
        v.P *= it->second;
    }
    std::vector<int> mono(F.N);
    for (int i = 0; i < F.N; ++i) mono[i] = monochrome_euler(F, c, i);
    for (int i = 0; i < F.N; ++i)
        for (int j = i + 1; j < F.N; ++j) {
            int chi = mono[i] + mono[j] - 2 * intersection_euler(F, c, i, j);
            if (chi % 2 != 0) throw OddEuler("bichrome surface");
            if (chi != 0) v.Q[{i, j}] = chi / 2;
        }
    return v;
}

}  // namespace

ColoredValue colored_value(const Foam& F, const Coloring& c) { return colored_value_cached(F, c, nullptr); }

RationalFn eval_colored(const Foam& F, const Coloring& c) {
    ColoredValue v = colored_value(F, c);
    if (v.sign_exp % 2 != 0) v.P = -v.P;
    return RationalFn(v.P, v.Q);
}

EvalResult eval_full(const Foam& F, const EvalOptions& opts) {
    std::vector<Coloring> cols = enumerate_colorings(F);
    EvalResult res;
    res.colorings = static_cast<long>(cols.size());
    res.degree = foam_degree(F);
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(cols.size())));
    // Colorings sharing a denominator are summed as plain polynomials; only the
    // few distinct denominators go through rational addition.
    using Buckets = std::map<RationalFn::DenMap, MultiPoly>;
    std::vector<Buckets> partial(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](int t) {
        try {
            DecorationCache cache(F.facets.size());
            for (std::size_t k = t; k < cols.size(); k += jobs) {
                ColoredValue v = colored_value_cached(F, cols[k], &cache);
                if (v.P.is_zero()) continue;
                auto [it, fresh] = partial[t].try_emplace(v.Q, MultiPoly(F.N));
                if (v.sign_exp % 2 != 0)
                    it->second -= v.P;
                else
                    it->second += v.P;
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Buckets merged;
    for (const auto& b : partial)
        for (const auto& [den, num] : b) {
            auto [it, fresh] = merged.try_emplace(den, MultiPoly(F.N));
            it->second += num;
        }
    RationalFn total(F.N);
    for (const auto& [den, num] : merged)
        if (!num.is_zero()) total = rf_add(total, RationalFn(num, den));
    res.value = rf_normalize(total);
    if (opts.check_symmetry && !is_symmetric(res.value)) throw NotSymmetric(res.value.to_string());
    if (opts.check_degree && decorations_homogeneous(F) && !res.value.is_zero()) {
        int e = 0;
        if (!res.value.is_homogeneous(&e) || 2 * e != res.degree)
            throw DegreeMismatch("expected degree " + std::to_string(res.degree) + ", got " + res.value.to_string());
    }
    return res;
}

MultiPoly eval(const Foam& F, const EvalOptions& opts) { return eval_full(F, opts).value; }

Rat colored_numeric(const Foam& F, const Coloring& c, const std::vector<Rat>& point) {
    ColoredValue v = colored_value(F, c);
    Rat term = specialize(v.P, point);
    if (v.sign_exp % 2 != 0) term = -term;
    for (const auto& [ij, e] : v.Q) {
        Rat d = point[ij.first] - point[ij.second];
        for (int k = 0; k < std::abs(e); ++k) term = e > 0 ? Rat(term / d) : Rat(term * d);
    }
    return term;
}

Rat eval_numeric(const Foam& F, const std::vector<Rat>& point) {
    if (static_cast<int>(point.size()) != F.N) throw ArityMismatch("point length differs from N");
    for (int i = 0; i < F.N; ++i)
        for (int j = i + 1; j < F.N; ++j)
            if (point[i] == point[j]) throw RepeatedPoint("coordinates " + std::to_string(i + 1) + " and " +
                                                          std::to_string(j + 1) + " coincide");
    Rat total = 0;
    for_each_coloring(F, [&](const Coloring& c) {
        total += colored_numeric(F, c, point);
        return true;
    });
    return total;
}

LemmaReport check_coloring_lemmas(const Foam& F, std::uint64_t seed) {
    LemmaReport rep;
    const int N = F.N;
    std::mt19937_64 rng(seed);
    std::vector<Rat> point(N);
    {
        // Distinct integers over small denominators.
        std::vector<long> v(4 * N + 4);
        std::iota(v.begin(), v.end(), 1);
        std::shuffle(v.begin(), v.end(), rng);
        for (int i = 0; i < N; ++i) {
            point[i] = Rat(v[i], 1 + static_cast<long>(rng() % 5));
            point[i].canonicalize();
            for (int j = 0; j < i; ++j)
                if (point[i] == point[j]) point[i] = Rat(v[i] * 64 + 1, 64);
        }
    }
    auto fail = [&](int which, const std::string& what) {
        ++rep.failures[which];
        if (rep.messages.size() < 8) rep.messages.push_back(what);
    };
    auto swap_bits = [](PigmentSet s, int i, int j) {
        const bool bi = has_pigment(s, i), bj = has_pigment(s, j);
        if (bi != bj) s ^= (1u << i) | (1u << j);
        return s;
    };
    for_each_coloring(F, [&](const Coloring& c) {
        ++rep.colorings;
        for (int i = 0; i < N; ++i) {
            ++rep.checks[0];
            if (monochrome_euler(F, c, i) % 2 != 0) fail(0, "odd monochrome Euler characteristic");
        }
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                ++rep.checks[0];
                const int bi = bichrome_euler(F, c, i, j), in = intersection_euler(F, c, i, j);
                const ThetaCounts th = theta_counts(F, c, i, j);
                if (bi % 2 != 0 || (in - th.positive - th.negative) % 2 != 0 ||
                    bi != monochrome_euler(F, c, i) + monochrome_euler(F, c, j) - 2 * in)
                    fail(0, "Euler identity of F_ij fails for pigments " + std::to_string(i + 1) + "," +
                                std::to_string(j + 1));
            }
        // Color exchange against variable exchange.
        const Rat base = colored_numeric(F, c, point);
        for (int i = 0; i + 1 < N; ++i) {
            ++rep.checks[3];
            Coloring sw(c.size());
            for (std::size_t f = 0; f < c.size(); ++f) sw[f] = swap_bits(c[f], i, i + 1);
            std::vector<Rat> q = point;
            std::swap(q[i], q[i + 1]);
            if (colored_numeric(F, sw, q) != base)
                fail(3, "color exchange " + std::to_string(i + 1) + "<->" + std::to_string(i + 2) + " differs");
        }
        const int s0 = s_invariant(F, c);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                auto comps = kempe_components(F, c, i, j);
                for (std::size_t k = 0; k < comps.size(); ++k) {
                    const Coloring d = apply_kempe(F, c, i, j, static_cast<int>(k));
                    ++rep.checks[2];
                    if (!satisfies_flow(F, d)) {
                        fail(2, "Kempe move breaks the flow condition");
                        continue;
                    }
                    for (int l = 0; l < N; ++l) {
                        if (l == i || l == j) continue;
                        ++rep.checks[2];
                        const int di = bichrome_euler(F, d, i, l) - bichrome_euler(F, c, i, l);
                        const int dj = bichrome_euler(F, d, j, l) - bichrome_euler(F, c, j, l);
                        if (di != -dj) fail(2, "Kempe move: Euler changes of F_ik and F_jk do not cancel");
                        if (l < j) continue;
                        ++rep.checks[1];
                        const int before = theta_counts(F, c, i, l).positive + theta_counts(F, c, j, l).positive;
                        const int after = theta_counts(F, d, i, l).positive + theta_counts(F, d, j, l).positive;
                        if ((before - after) % 2 != 0) fail(1, "Kempe move changes the theta+ parity");
                    }
                    if (i != 0 || j != 1) continue;
                    ++rep.checks[4];
                    const int ds = s_invariant(F, d) - s0;
                    if (comps[k].euler % 2 != 0 || (ds - comps[k].euler / 2) % 2 != 0)
                        fail(4, "Kempe move changes s by the wrong parity");
                }
            }
        return true;
    });
    return rep;
}

void FoamLinComb::add(const Int& coeff, Foam F) {
    const int N = F.N;
    terms.emplace_back(MultiPoly::constant(N, coeff), std::move(F));
}

FoamLinComb& FoamLinComb::operator+=(const FoamLinComb& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

FoamLinComb FoamLinComb::operator-() const {
    FoamLinComb r = *this;
    for (auto& [c, F] : r.terms) c = -c;
    return r;
}

MultiPoly eval_lincomb(const FoamLinComb& L, int N, const EvalOptions& opts) {
    MultiPoly total(N);
    for (const auto& [c, F] : L.terms) {
        if (F.N != N) throw ArityMismatch("linear combination mixes N");
        if (c.is_zero()) continue;
        total += c * eval(F, opts);
    }
    return total;
}

}  // namespace foam
