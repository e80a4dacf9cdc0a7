#include "foam/foamcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace foam {

VarSet pigments_of(PigmentSet s) {
    VarSet v;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1u) v.push_back(i);
    return v;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Germ table: (role, part) pairs per germ; part 0/1 = first/second thin, 2 = thick.
constexpr int kGerms[6][2][2] = {
    {{0, 0}, {3, 0}},  // A
    {{0, 1}, {1, 0}},  // B
    {{1, 1}, {2, 1}},  // C
    {{0, 2}, {2, 0}},  // AB
    {{1, 2}, {3, 1}},  // BC
    {{2, 2}, {3, 2}},  // ABC
};

int slot_of_part(bool swapped, int part) {
    if (part == 2) return 2;
    return swapped ? 1 - part : part;
}

int side_key(const SideRef& s) { return s.arc * 3 + s.slot; }

bool planar_rotation(const Foam& F, const SingularPoint& P, const std::array<int, 4>& perm,
                     const std::array<bool, 4>& swapped) {
    // germ_at[role][slot]
    int germ_at[4][3];
    for (int g = 0; g < 6; ++g)
        for (int k = 0; k < 2; ++k) {
            int r = kGerms[g][k][0], part = kGerms[g][k][1];
            germ_at[r][slot_of_part(swapped[r], part)] = g;
        }
    int rot[4][3];
    for (int r = 0; r < 4; ++r) {
        bool incoming = P.incident[perm[r]].end == 1;
        for (int s = 0; s < 3; ++s) rot[r][s] = germ_at[r][incoming ? 2 - s : s];
    }
    auto other_end = [](int g, int r) { return kGerms[g][0][0] == r ? kGerms[g][1][0] : kGerms[g][0][0]; };
    bool seen[4][6] = {};
    int faces = 0;
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 3; ++s) {
            int v = r, g = rot[r][s];
            if (seen[v][g]) continue;
            ++faces;
            while (!seen[v][g]) {
                seen[v][g] = true;
                int w = other_end(g, v);
                int idx = 0;
                while (rot[w][idx] != g) ++idx;
                v = w;
                g = rot[w][(idx + 1) % 3];
            }
        }
    (void)F;
    return faces == 4;
}

}  // namespace

std::optional<PointRoles> derive_point_roles(const Foam& F, int point) {
    const SingularPoint& P = F.points.at(point);
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        for (int mask = 0; mask < 16; ++mask) {
            std::array<bool, 4> sw{};
            for (int r = 0; r < 4; ++r) sw[r] = (mask >> r) & 1;
            auto facet_of = [&](int r, int part) {
                const BindingArc& x = F.arcs[P.incident[perm[r]].arc];
                return x.sides[slot_of_part(sw[r], part)];
            };
            auto label_of = [&](int r, int part) { return F.facets[facet_of(r, part)].label; };
            const int a = label_of(0, 0), b = label_of(0, 1), c = label_of(1, 1);
            if (label_of(1, 0) != b || label_of(2, 0) != a + b || label_of(2, 1) != c || label_of(3, 0) != a ||
                label_of(3, 1) != b + c)
                continue;
            bool ok = true;
            for (int g = 0; g < 6 && ok; ++g)
                ok = facet_of(kGerms[g][0][0], kGerms[g][0][1]) == facet_of(kGerms[g][1][0], kGerms[g][1][1]);
            if (!ok || !planar_rotation(F, P, perm, sw)) continue;
            PointRoles pr;
            pr.incident_of_role = perm;
            pr.thin_swapped = sw;
            pr.a = a;
            pr.b = b;
            pr.c = c;
            return pr;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

std::array<GermPair, 6> germ_pairs(const Foam& F, int point, const PointRoles& roles) {
    const SingularPoint& P = F.points.at(point);
    std::array<GermPair, 6> out;
    for (int g = 0; g < 6; ++g) {
        SideRef s[2];
        for (int k = 0; k < 2; ++k) {
            int r = kGerms[g][k][0], part = kGerms[g][k][1];
            s[k] = {P.incident[roles.incident_of_role[r]].arc, slot_of_part(roles.thin_swapped[r], part)};
        }
        out[g] = {s[0], s[1], F.arcs[s[0].arc].sides[s[0].slot]};
    }
    return out;
}

std::vector<std::vector<std::vector<SideRef>>> trace_boundaries(const Foam& F) {
    // partner[(side key, point)] = side glued to it at that point
    std::map<std::pair<int, int>, SideRef> partner;
    for (int p = 0; p < static_cast<int>(F.points.size()); ++p) {
        auto roles = derive_point_roles(F, p);
        if (!roles) throw InvalidFoam("point " + std::to_string(p) + ": incompatible incident bindings");
        for (const GermPair& gp : germ_pairs(F, p, *roles)) {
            partner[{side_key(gp.first), p}] = gp.second;
            partner[{side_key(gp.second), p}] = gp.first;
        }
    }
    std::vector<std::vector<std::vector<SideRef>>> out(F.facets.size());
    std::set<int> visited;
    for (int x = 0; x < static_cast<int>(F.arcs.size()); ++x) {
        const BindingArc& arc = F.arcs[x];
        for (int slot = 0; slot < 3; ++slot) {
            SideRef start{x, slot};
            if (visited.count(side_key(start))) continue;
            std::vector<SideRef> circle;
            if (arc.kind == ArcKind::Circle) {
                circle.push_back(start);
                visited.insert(side_key(start));
            } else {
                SideRef cur = start;
                int exit_end = 1;
                const std::size_t limit = 3 * F.arcs.size() + 1;
                while (true) {
                    if (visited.count(side_key(cur)))
                        throw InvalidFoam("arc " + std::to_string(cur.arc) + ": boundary tracing revisits a side");
                    visited.insert(side_key(cur));
                    circle.push_back(cur);
                    const BindingArc& ca = F.arcs[cur.arc];
                    int p = ca.ends[exit_end];
                    auto it = partner.find({side_key(cur), p});
                    if (it == partner.end())
                        throw InvalidFoam("arc " + std::to_string(cur.arc) + ": side has no partner at point " +
                                          std::to_string(p));
                    cur = it->second;
                    const BindingArc& na = F.arcs[cur.arc];
                    if (na.ends[0] == na.ends[1])
                        throw InvalidFoam("arc " + std::to_string(cur.arc) + ": both ends at one point");
                    exit_end = na.ends[0] == p ? 1 : 0;
                    if (cur == start) break;
                    if (circle.size() > limit) throw InvalidFoam("boundary tracing does not close");
                }
            }
            auto mn = std::min_element(circle.begin(), circle.end());
            std::rotate(circle.begin(), mn, circle.end());
            out[arc.sides[slot]].push_back(std::move(circle));
        }
    }
    for (auto& circles : out) std::sort(circles.begin(), circles.end());
    return out;
}

std::string ValidationReport::to_string() const {
    std::ostringstream o;
    for (const auto& s : issues) o << s << '\n';
    return o.str();
}

ValidationReport validate_structure(const Foam& F) {
    ValidationReport rep;
    auto issue = [&](const std::string& where, const std::string& what) { rep.issues.push_back(where + ": " + what); };
    const int nf = static_cast<int>(F.facets.size());
    const int na = static_cast<int>(F.arcs.size());
    const int np = static_cast<int>(F.points.size());
    if (F.N < 1 || F.N > kMaxPigments) issue("foam", "N out of range");
    for (int f = 0; f < nf; ++f) {
        const Facet& fa = F.facets[f];
        const std::string w = "facet " + std::to_string(f);
        if (fa.label < 0 || fa.label > F.N) issue(w, "label out of range");
        if (fa.genus < 0) issue(w, "negative genus");
        if (fa.decoration.arity() != fa.label) issue(w, "decoration arity differs from label");
    }
    for (int x = 0; x < na; ++x) {
        const BindingArc& a = F.arcs[x];
        const std::string w = "arc " + std::to_string(x);
        bool sides_ok = true;
        for (int s : a.sides)
            if (s < 0 || s >= nf) sides_ok = false;
        if (!sides_ok) {
            issue(w, "side references a missing facet");
            continue;
        }
        const int l0 = F.facets[a.sides[0]].label, l1 = F.facets[a.sides[1]].label,
                  l2 = F.facets[a.sides[2]].label;
        if (l0 + l1 != l2)
            issue(w, "label flow " + std::to_string(l0) + "+" + std::to_string(l1) + " != " + std::to_string(l2));
        if (a.kind == ArcKind::Circle) {
            if (a.ends[0] != -1 || a.ends[1] != -1) issue(w, "circle binding with endpoints");
        } else {
            if (a.ends[0] < 0 || a.ends[0] >= np || a.ends[1] < 0 || a.ends[1] >= np)
                issue(w, "endpoint references a missing point");
            else if (a.ends[0] == a.ends[1])
                issue(w, "both ends at the same singular point");
        }
    }
    for (int p = 0; p < np; ++p) {
        const std::string w = "point " + std::to_string(p);
        for (const ArcEnd& e : F.points[p].incident) {
            if (e.arc < 0 || e.arc >= na || e.end < 0 || e.end > 1) {
                issue(w, "bad incident arc-end");
                continue;
            }
            if (F.arcs[e.arc].kind != ArcKind::Interval || F.arcs[e.arc].ends[e.end] != p)
                issue(w, "incident arc " + std::to_string(e.arc) + " does not end here");
        }
    }
    // every interval end must be listed at its point exactly once
    std::map<std::pair<int, int>, int> listed;
    for (int p = 0; p < np; ++p)
        for (const ArcEnd& e : F.points[p].incident) ++listed[{e.arc, e.end}];
    for (int x = 0; x < na; ++x) {
        if (F.arcs[x].kind != ArcKind::Interval) continue;
        for (int e = 0; e < 2; ++e)
            if (listed[{x, e}] != 1)
                issue("arc " + std::to_string(x), "end " + std::to_string(e) + " listed " +
                                                      std::to_string(listed[{x, e}]) + " times at points");
    }
    if (!rep.ok()) return rep;

    for (int p = 0; p < np; ++p)
        if (!derive_point_roles(F, p))
            issue("point " + std::to_string(p), "incident bindings do not fit the tetrahedral model");
    return rep;
}

ValidationReport validate_foam(const Foam& F) {
    ValidationReport rep = validate_structure(F);
    if (!rep.ok()) return rep;
    auto issue = [&](const std::string& where, const std::string& what) { rep.issues.push_back(where + ": " + what); };
    const int nf = static_cast<int>(F.facets.size());
    const int na = static_cast<int>(F.arcs.size());

    // gluing: each side used exactly once in the declared boundaries, by the facet it names
    std::map<SideRef, int> uses;
    for (int f = 0; f < nf; ++f)
        for (const auto& circ : F.facets[f].boundary)
            for (const SideRef& s : circ) {
                if (s.arc < 0 || s.arc >= na || s.slot < 0 || s.slot > 2) {
                    issue("facet " + std::to_string(f), "boundary references a missing arc side");
                    continue;
                }
                ++uses[s];
                if (F.arcs[s.arc].sides[s.slot] != f)
                    issue("facet " + std::to_string(f), "boundary lists side [" + std::to_string(s.arc) + "," +
                                                            std::to_string(s.slot) + "] of another facet");
            }
    for (int x = 0; x < na; ++x)
        for (int s = 0; s < 3; ++s) {
            int u = uses[SideRef{x, s}];
            if (u != 1)
                issue("arc " + std::to_string(x),
                      "side " + std::to_string(s) + " referenced " + std::to_string(u) + " times in facet boundaries");
        }
    if (!rep.ok()) return rep;

    std::vector<std::vector<std::vector<SideRef>>> traced;
    try {
        traced = trace_boundaries(F);
    } catch (const FoamError& e) {
        issue("gluing", e.what());
        return rep;
    }
    for (int f = 0; f < nf; ++f) {
        auto as_sets = [](const std::vector<std::vector<SideRef>>& circles) {
            std::vector<std::vector<SideRef>> r;
            for (auto c : circles) {
                std::sort(c.begin(), c.end());
                r.push_back(c);
            }
            std::sort(r.begin(), r.end());
            return r;
        };
        if (as_sets(traced[f]) != as_sets(F.facets[f].boundary))
            issue("facet " + std::to_string(f), "declared boundary circles differ from the gluing");
    }
    return rep;
}

void require_valid(const Foam& F) {
    auto rep = validate_foam(F);
    if (!rep.ok()) throw InvalidFoam(rep.to_string());
}

int foam_degree(const Foam& F) {
    const int N = F.N;
    long d = 0;
    for (const Facet& f : F.facets) {
        d -= static_cast<long>(f.label) * (N - f.label) * f.euler();
        int mb = f.decoration.max_boxes();
        if (mb > 0) d += 2L * mb;
    }
    for (const BindingArc& x : F.arcs) {
        if (x.kind != ArcKind::Interval) continue;
        int a = F.facets[x.sides[0]].label, b = F.facets[x.sides[1]].label;
        d += static_cast<long>(a) * b + static_cast<long>(a + b) * (N - a - b);
    }
    for (int p = 0; p < static_cast<int>(F.points.size()); ++p) {
        auto r = derive_point_roles(F, p);
        if (!r) throw InvalidFoam("point " + std::to_string(p) + ": incompatible incident bindings");
        long a = r->a, b = r->b, c = r->c, dd = N - a - b - c;
        d -= a * b + b * c + c * dd + dd * a + a * c + b * dd;
    }
    return static_cast<int>(d);
}

bool decorations_homogeneous(const Foam& F) {
    for (const Facet& f : F.facets)
        if (!f.decoration.is_homogeneous()) return false;
    return true;
}

bool satisfies_flow(const Foam& F, const Coloring& c) {
    if (c.size() != F.facets.size()) return false;
    for (std::size_t f = 0; f < c.size(); ++f)
        if (pigment_count(c[f]) != F.facets[f].label || (c[f] >> F.N) != 0) return false;
    for (const BindingArc& x : F.arcs) {
        PigmentSet s0 = c[x.sides[0]], s1 = c[x.sides[1]], s2 = c[x.sides[2]];
        if ((s0 & s1) || (s0 | s1) != s2) return false;
    }
    return true;
}

void for_each_coloring(const Foam& F, const std::function<bool(const Coloring&)>& fn) {
    const int nf = static_cast<int>(F.facets.size());
    const int N = F.N;
    std::vector<std::vector<PigmentSet>> subsets(N + 1);
    for (PigmentSet s = 0; s < (PigmentSet(1) << N); ++s) subsets[pigment_count(s)].push_back(s);

    // BFS order over the facet adjacency so constraints propagate early
    std::vector<std::vector<int>> arcs_of(nf);
    for (int x = 0; x < static_cast<int>(F.arcs.size()); ++x)
        for (int s : F.arcs[x].sides)
            if (arcs_of[s].empty() || arcs_of[s].back() != x) arcs_of[s].push_back(x);
    std::vector<int> order;
    std::vector<char> queued(nf, 0);
    for (int root = 0; root < nf; ++root) {
        if (queued[root]) continue;
        queued[root] = 1;
        std::size_t head = order.size();
        order.push_back(root);
        while (head < order.size()) {
            int f = order[head++];
            for (int x : arcs_of[f])
                for (int g : F.arcs[x].sides)
                    if (!queued[g]) {
                        queued[g] = 1;
                        order.push_back(g);
                    }
        }
    }

    Coloring c(nf, 0);
    std::vector<char> assigned(nf, 0);
    bool stop = false;
    auto consistent = [&](int f) {
        for (int x : arcs_of[f]) {
            const auto& sd = F.arcs[x].sides;
            bool a0 = assigned[sd[0]], a1 = assigned[sd[1]], a2 = assigned[sd[2]];
            PigmentSet s0 = c[sd[0]], s1 = c[sd[1]], s2 = c[sd[2]];
            if (a0 && a1 && (s0 & s1)) return false;
            if (a0 && a2 && (s0 & ~s2)) return false;
            if (a1 && a2 && (s1 & ~s2)) return false;
            if (a0 && a1 && a2 && (s0 | s1) != s2) return false;
        }
        return true;
    };
    std::function<void(int)> rec = [&](int k) {
        if (stop) return;
        if (k == nf) {
            if (!fn(c)) stop = true;
            return;
        }
        const int f = order[k];
        const int label = F.facets[f].label;
        // a value forced by an arc whose two other sides are known
        std::optional<PigmentSet> forced;
        for (int x : arcs_of[f]) {
            const auto& sd = F.arcs[x].sides;
            for (int pos = 0; pos < 3 && !forced; ++pos) {
                if (sd[pos] != f) continue;
                int o1 = sd[(pos + 1) % 3], o2 = sd[(pos + 2) % 3];
                if (o1 == f || o2 == f || !assigned[o1] || !assigned[o2]) continue;
                if (pos == 2)
                    forced = c[sd[0]] | c[sd[1]];
                else
                    forced = c[sd[2]] & ~c[sd[1 - pos]];
            }
            if (forced) break;
        }
        assigned[f] = 1;
        if (forced) {
            if (pigment_count(*forced) == label) {
                c[f] = *forced;
                if (consistent(f)) rec(k + 1);
            }
        } else {
            for (PigmentSet s : subsets[label]) {
                c[f] = s;
                if (consistent(f)) rec(k + 1);
                if (stop) break;
            }
        }
        assigned[f] = 0;
        c[f] = 0;
    };
    rec(0);
}

std::vector<Coloring> enumerate_colorings(const Foam& F) {
    std::vector<Coloring> out;
    for_each_coloring(F, [&](const Coloring& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

int euler_of_facets(const Foam& F, const std::vector<char>& in_set) {
    int chi = 0;
    for (std::size_t f = 0; f < F.facets.size(); ++f)
        if (in_set[f]) chi += F.facets[f].euler();
    std::vector<char> arc_in(F.arcs.size(), 0);
    for (std::size_t x = 0; x < F.arcs.size(); ++x) {
        const auto& sd = F.arcs[x].sides;
        arc_in[x] = in_set[sd[0]] || in_set[sd[1]] || in_set[sd[2]];
        if (arc_in[x] && F.arcs[x].kind == ArcKind::Interval) --chi;
    }
    for (const SingularPoint& p : F.points) {
        bool in = false;
        for (const ArcEnd& e : p.incident) in = in || arc_in[e.arc];
        if (in) ++chi;
    }
    return chi;
}

namespace {

std::vector<char> facets_where(const Foam& F, const Coloring& c, const std::function<bool(PigmentSet)>& pred) {
    std::vector<char> s(F.facets.size());
    for (std::size_t f = 0; f < s.size(); ++f) s[f] = pred(c[f]);
    return s;
}

void check_pigment(const Foam& F, int i) {
    if (i < 0 || i >= F.N) throw BadParameters("pigment out of range");
}

}  // namespace

int monochrome_euler(const Foam& F, const Coloring& c, int i) {
    check_pigment(F, i);
    int chi = euler_of_facets(F, facets_where(F, c, [i](PigmentSet s) { return has_pigment(s, i); }));
    if (chi % 2 != 0) throw OddEuler("monochrome surface of pigment " + std::to_string(i + 1));
    return chi;
}

int intersection_euler(const Foam& F, const Coloring& c, int i, int j) {
    check_pigment(F, i);
    check_pigment(F, j);
    return euler_of_facets(F,
                           facets_where(F, c, [i, j](PigmentSet s) { return has_pigment(s, i) && has_pigment(s, j); }));
}

int bichrome_euler(const Foam& F, const Coloring& c, int i, int j) {
    int chi = monochrome_euler(F, c, i) + monochrome_euler(F, c, j) - 2 * intersection_euler(F, c, i, j);
    if (chi % 2 != 0)
        throw OddEuler("bichrome surface of pigments " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    return chi;
}

ThetaCounts theta_counts(const Foam& F, const Coloring& c, int i, int j) {
    check_pigment(F, i);
    check_pigment(F, j);
    if (i >= j) throw BadParameters("theta_counts needs i < j");
    const int na = static_cast<int>(F.arcs.size());
    std::vector<int> sign(na, 0);  // +1 positive separating, -1 negative, 0 not separating
    for (int x = 0; x < na; ++x) {
        PigmentSet s0 = c[F.arcs[x].sides[0]], s1 = c[F.arcs[x].sides[1]];
        if (has_pigment(s0, i) && has_pigment(s1, j) && !has_pigment(s0, j) && !has_pigment(s1, i)) sign[x] = 1;
        if (has_pigment(s1, i) && has_pigment(s0, j) && !has_pigment(s1, j) && !has_pigment(s0, i)) sign[x] = -1;
    }
    UnionFind uf(na);
    for (int p = 0; p < static_cast<int>(F.points.size()); ++p) {
        std::vector<int> sep;
        for (const ArcEnd& e : F.points[p].incident)
            if (sign[e.arc] != 0) sep.push_back(e.arc);
        if (sep.empty()) continue;
        if (sep.size() != 2)
            throw BadCircleStructure("point " + std::to_string(p) + " has " + std::to_string(sep.size()) +
                                     " separating arcs");
        uf.unite(sep[0], sep[1]);
    }
    std::map<int, int> circle_sign;
    for (int x = 0; x < na; ++x) {
        if (sign[x] == 0) continue;
        auto [it, ins] = circle_sign.try_emplace(uf.find(x), sign[x]);
        if (!ins && it->second != sign[x])
            throw BadCircleStructure("circle through arc " + std::to_string(x) + " mixes signs");
    }
    ThetaCounts t;
    for (const auto& [root, s] : circle_sign) (s > 0 ? t.positive : t.negative)++;
    return t;
}

std::vector<KempeComponent> kempe_components(const Foam& F, const Coloring& c, int i, int j) {
    check_pigment(F, i);
    check_pigment(F, j);
    if (i == j) throw BadParameters("kempe_components needs distinct pigments");
    const int nf = static_cast<int>(F.facets.size());
    auto in_bichrome = [&](int f) { return has_pigment(c[f], i) != has_pigment(c[f], j); };
    UnionFind uf(nf);
    for (const BindingArc& x : F.arcs) {
        int first = -1;
        for (int s : x.sides)
            if (in_bichrome(s)) {
                if (first < 0)
                    first = s;
                else
                    uf.unite(first, s);
            }
    }
    std::map<int, KempeComponent> comps;
    for (int f = 0; f < nf; ++f)
        if (in_bichrome(f)) comps[uf.find(f)].facets.push_back(f);
    std::vector<KempeComponent> out;
    for (auto& [root, comp] : comps) {
        std::vector<char> s(nf, 0);
        for (int f : comp.facets) s[f] = 1;
        comp.euler = euler_of_facets(F, s);
        out.push_back(comp);
    }
    return out;
}

Coloring apply_kempe(const Foam& F, const Coloring& c, int i, int j, int component) {
    auto comps = kempe_components(F, c, i, j);
    if (component < 0 || component >= static_cast<int>(comps.size()))
        throw InvalidComponent("component " + std::to_string(component) + " of " + std::to_string(comps.size()));
    Coloring out = c;
    const PigmentSet both = (PigmentSet(1) << i) | (PigmentSet(1) << j);
    for (int f : comps[component].facets) out[f] ^= both;
    return out;
}

Foam disjoint_union(const Foam& F, const Foam& G) {
    if (F.N != G.N) throw ArityMismatch("disjoint union of foams with different N");
    Foam U = F;
    const int fo = static_cast<int>(F.facets.size()), ao = static_cast<int>(F.arcs.size()),
              po = static_cast<int>(F.points.size());
    for (Facet f : G.facets) {
        for (auto& circ : f.boundary)
            for (auto& s : circ) s.arc += ao;
        U.facets.push_back(std::move(f));
    }
    for (BindingArc x : G.arcs) {
        for (int& s : x.sides) s += fo;
        for (int& e : x.ends)
            if (e >= 0) e += po;
        U.arcs.push_back(x);
    }
    for (SingularPoint p : G.points) {
        for (auto& e : p.incident) e.arc += ao;
        U.points.push_back(p);
    }
    return U;
}

Foam strip_zero_facets(const Foam& F) {
    const int nf = static_cast<int>(F.facets.size());
    const int na = static_cast<int>(F.arcs.size());
    const int np = static_cast<int>(F.points.size());
    bool any = false;
    for (const Facet& f : F.facets) any = any || f.label == 0;
    if (!any) return F;

    auto zero = [&](int f) { return F.facets[f].label == 0; };
    std::vector<char> degenerate(na, 0);
    UnionFind fuf(nf);
    for (int x = 0; x < na; ++x) {
        const auto& sd = F.arcs[x].sides;
        if (zero(sd[0]) || zero(sd[1])) {
            degenerate[x] = 1;
            if (!zero(sd[2])) fuf.unite(zero(sd[0]) ? sd[1] : sd[0], sd[2]);
        }
    }
    // classify points by their surviving arcs
    std::vector<int> kind(np);  // 4 kept, 2 pass-through, 0 dropped
    std::vector<std::vector<ArcEnd>> surviving(np);
    for (int p = 0; p < np; ++p) {
        for (const ArcEnd& e : F.points[p].incident)
            if (!degenerate[e.arc]) surviving[p].push_back(e);
        kind[p] = static_cast<int>(surviving[p].size());
        if (kind[p] != 0 && kind[p] != 2 && kind[p] != 4)
            throw InvalidFoam("point " + std::to_string(p) + ": unexpected degenerate pattern");
    }

    // new facets
    std::map<int, int> new_facet_of_root;
    Foam G;
    G.N = F.N;
    std::vector<int> new_facet(nf, -1);
    for (int f = 0; f < nf; ++f) {
        if (zero(f)) continue;
        int r = fuf.find(f);
        auto [it, ins] = new_facet_of_root.try_emplace(r, static_cast<int>(G.facets.size()));
        if (ins) {
            Facet nfct;
            nfct.label = F.facets[f].label;
            nfct.decoration = SchurCombo::one(nfct.label);
            G.facets.push_back(nfct);
        }
        new_facet[f] = it->second;
        G.facets[it->second].decoration = G.facets[it->second].decoration * F.facets[f].decoration;
    }
    std::vector<int> chi(G.facets.size(), 0);
    for (int f = 0; f < nf; ++f)
        if (!zero(f)) chi[new_facet[f]] += F.facets[f].euler();
    for (int x = 0; x < na; ++x) {
        const auto& sd = F.arcs[x].sides;
        if (degenerate[x] && !zero(sd[2]) && F.arcs[x].kind == ArcKind::Interval) chi[new_facet[sd[2]]] -= 1;
    }
    for (int p = 0; p < np; ++p) {
        if (kind[p] != 0) continue;
        std::set<int> touched;
        for (const ArcEnd& e : F.points[p].incident)
            for (int s : F.arcs[e.arc].sides)
                if (!zero(s)) touched.insert(new_facet[s]);
        for (int g : touched) chi[g] += 1;
    }

    // new arcs: chains of surviving arcs through pass-through points
    std::vector<int> new_arc(na, -1);
    std::vector<int> new_arc_end_tail(na, -1);  // which end of the new arc the old tail maps to
    auto map_sides = [&](int x) {
        std::array<int, 3> s;
        for (int k = 0; k < 3; ++k) s[k] = new_facet[F.arcs[x].sides[k]];
        return s;
    };
    auto next_through = [&](int x, int p) {
        for (const ArcEnd& e : surviving[p])
            if (e.arc != x) return e;
        throw InvalidFoam("pass-through point without a partner arc");
    };
    std::vector<std::pair<int, int>> old_to_new_end(na * 2, {-1, -1});
    for (int pass = 0; pass < 2; ++pass) {
        // pass 0: chains starting at a kept tail (or plain circles); pass 1: closed chains
        for (int x0 = 0; x0 < na; ++x0) {
            if (degenerate[x0] || new_arc[x0] >= 0) continue;
            const BindingArc& a0 = F.arcs[x0];
            bool starts_here = a0.kind == ArcKind::Circle || kind[a0.ends[0]] == 4;
            if (pass == 0 && !starts_here) continue;
            BindingArc na_;
            na_.sides = map_sides(x0);
            const int id = static_cast<int>(G.arcs.size());
            if (a0.kind == ArcKind::Circle) {
                na_.kind = ArcKind::Circle;
                new_arc[x0] = id;
                G.arcs.push_back(na_);
                continue;
            }
            int cur = x0;
            std::vector<int> chain;
            while (true) {
                if (new_arc[cur] >= 0 && cur != x0)
                    throw InvalidFoam("binding chain revisits arc " + std::to_string(cur));
                chain.push_back(cur);
                new_arc[cur] = id;
                if (map_sides(cur) != na_.sides)
                    throw InvalidFoam("cyclic order changes along a binding through a degenerate point");
                int h = F.arcs[cur].ends[1];
                if (kind[h] == 4) break;
                ArcEnd nx = next_through(cur, h);
                if (nx.end != 0) throw InvalidFoam("binding orientation flips at a degenerate point");
                if (nx.arc == x0) break;  // closed chain
                cur = nx.arc;
            }
            const int head_point = F.arcs[chain.back()].ends[1];
            if (pass == 0) {
                na_.kind = ArcKind::Interval;
                old_to_new_end[x0 * 2 + 0] = {id, 0};
                old_to_new_end[chain.back() * 2 + 1] = {id, 1};
                na_.ends = {a0.ends[0], head_point};  // old point ids, remapped below
            } else {
                na_.kind = ArcKind::Circle;
            }
            G.arcs.push_back(na_);
        }
    }
    // new points
    std::vector<int> new_point(np, -1);
    for (int p = 0; p < np; ++p) {
        if (kind[p] != 4) continue;
        new_point[p] = static_cast<int>(G.points.size());
        SingularPoint sp;
        for (int k = 0; k < 4; ++k) {
            const ArcEnd& e = F.points[p].incident[k];
            auto ne = old_to_new_end[e.arc * 2 + e.end];
            if (ne.first < 0) throw InvalidFoam("kept point lost an incident binding");
            sp.incident[k] = {ne.first, ne.second};
        }
        G.points.push_back(sp);
    }
    for (BindingArc& x : G.arcs)
        if (x.kind == ArcKind::Interval)
            for (int& e : x.ends) e = new_point[e];

    auto traced = trace_boundaries(G);
    for (std::size_t g = 0; g < G.facets.size(); ++g) {
        G.facets[g].boundary = traced[g];
        int twice_genus = 2 - chi[g] - static_cast<int>(traced[g].size());
        if (twice_genus < 0 || twice_genus % 2 != 0)
            throw InvalidFoam("merged facet " + std::to_string(g) + " has inconsistent Euler characteristic");
        G.facets[g].genus = twice_genus / 2;
    }
    return G;
}

}  // namespace foam
