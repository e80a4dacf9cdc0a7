#include "foam/foamzoo.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <random>
#include <set>
#include <thread>

namespace foam {

namespace {

SchurCombo pi(int arity, const YoungDiagram& d) { return SchurCombo::single(arity, d); }

MultiPoly constant(int N, long c) { return MultiPoly::constant(N, Int(c)); }

int sign_of(long exponent) { return exponent % 2 ? -1 : 1; }

void require_arity(const SchurCombo& d, int label, const char* what) {
    if (d.arity() != label) throw ArityMismatch(std::string(what) + ": decoration arity differs from the label");
}

SchurCombo or_one(const SchurCombo& d, int label) { return d.arity() == 0 ? SchurCombo::one(label) : d; }

// Fills facet boundaries from the arcs; genera are left to the caller.
void attach_boundaries(Foam& F) {
    auto rep = validate_structure(F);
    if (!rep.ok()) throw InvalidFoam(rep.to_string());
    auto traced = trace_boundaries(F);
    for (std::size_t f = 0; f < F.facets.size(); ++f) F.facets[f].boundary = traced[f];
}

}  // namespace

Foam build_sphere(int a, const SchurCombo& dec, int N) {
    if (a < 0 || a > N) throw BadParameters("sphere: label out of range");
    require_arity(dec, a, "sphere");
    Foam F;
    F.N = N;
    F.facets.push_back({a, 0, {}, dec});
    return F;
}

Foam build_theta(int a, int b, const SchurCombo& dec_a, const SchurCombo& dec_b, const SchurCombo& dec_ab, int N) {
    if (a < 1 || b < 1 || a + b > N) throw BadParameters("theta: labels out of range");
    require_arity(dec_a, a, "theta");
    require_arity(dec_b, b, "theta");
    require_arity(dec_ab, a + b, "theta");
    Foam F;
    F.N = N;
    F.facets.push_back({a, 0, {{{0, 0}}}, dec_a});
    F.facets.push_back({b, 0, {{{0, 1}}}, dec_b});
    F.facets.push_back({a + b, 0, {{{0, 2}}}, dec_ab});
    BindingArc arc;
    arc.kind = ArcKind::Circle;
    arc.sides = {0, 1, 2};
    F.arcs.push_back(arc);
    return F;
}

Foam build_graph_times_circle(const MoyGraph& G, const std::vector<SchurCombo>& edge_decs) {
    G.validate();
    if (!edge_decs.empty() && edge_decs.size() != G.edges.size())
        throw BadParameters("graph x circle: one decoration per edge expected");
    Foam F;
    F.N = G.N;
    for (std::size_t e = 0; e < G.edges.size(); ++e) {
        const int l = G.edges[e].label;
        SchurCombo d = edge_decs.empty() ? SchurCombo::one(l) : or_one(edge_decs[e], l);
        require_arity(d, l, "graph x circle");
        F.facets.push_back({l, G.edges[e].tail < 0 ? 1 : 0, {}, d});
    }
    for (const MoyVertex& v : G.vertices) {
        BindingArc arc;
        arc.kind = ArcKind::Circle;
        arc.sides = {v.left, v.right, v.thick};
        F.arcs.push_back(arc);
    }
    attach_boundaries(F);
    return strip_zero_facets(F);
}

Foam build_gen_theta_closed(const std::vector<int>& a, const GenThetaDecorations& decs) {
    if (a.empty()) throw BadParameters("gen theta: no strands");
    const int k = static_cast<int>(a.size());
    int N = 0;
    for (int x : a) {
        if (x < 1) throw BadParameters("gen theta: strand labels must be positive");
        N += x;
    }
    if (N > kMaxPigments) throw BadParameters("gen theta: too many pigments");
    if (static_cast<int>(decs.partial.size()) > k) throw BadParameters("gen theta: too many partial decorations");
    Foam F;
    F.N = N;
    // Facets 0..k-1 are the strands (facet 0 is also s_1); k+j-2 is s_j for j >= 2.
    for (int i = 0; i < k; ++i) F.facets.push_back({a[i], 0, {}, SchurCombo::one(a[i])});
    int s = a[0];
    for (int j = 2; j <= k; ++j) {
        s += a[j - 1];
        F.facets.push_back({s, 0, {}, SchurCombo::one(s)});
    }
    auto partial_facet = [&](int j) { return j == 1 ? 0 : k + j - 2; };
    for (const auto& layer : decs.layers) {
        if (static_cast<int>(layer.size()) > k) throw BadParameters("gen theta: layer longer than the strand list");
        for (std::size_t i = 0; i < layer.size(); ++i) {
            if (layer[i].arity() == 0) continue;
            require_arity(layer[i], a[i], "gen theta");
            F.facets[i].decoration = F.facets[i].decoration * layer[i];
        }
    }
    for (int j = 1; j <= static_cast<int>(decs.partial.size()); ++j) {
        const SchurCombo& d = decs.partial[j - 1];
        if (d.arity() == 0) continue;
        Facet& f = F.facets[partial_facet(j)];
        require_arity(d, f.label, "gen theta");
        f.decoration = f.decoration * d;
    }
    for (int i = 2; i <= k; ++i) {
        BindingArc arc;
        arc.kind = ArcKind::Circle;
        arc.sides = {partial_facet(i - 1), i - 1, partial_facet(i)};
        F.arcs.push_back(arc);
    }
    attach_boundaries(F);
    return F;
}

// ---------------------------------------------------------------- relations

OpenFoam Relation::open(const OpenTerm& t) const {
    Movie m(N, boundary);
    t.script(m);
    return m.finish();
}

OpenFoam Relation::compose(const OpenTerm& first, const OpenTerm& second) const {
    Movie m(N, boundary);
    first.script(m);
    second.script(m);
    return m.finish();
}

namespace {

OpenTerm identity_term(int N, const std::string& name = "id") {
    return {constant(N, 1), name, [](Movie&) {}};
}

int box_sign(const YoungDiagram& d) { return d.size() % 2 ? -1 : 1; }

Relation sphere_relation(const std::vector<int>& p, int N) {
    if (p.size() != 1 || p[0] < 1 || p[0] > N) throw BadParameters("sphere: expects a in 1..N");
    const int a = p[0];
    Relation R;
    R.lhs.push_back({constant(N, 1), "sphere", [a, N](Movie& m) {
                         m.cup("c", a);
                         m.decorate("c", pi(a, rho(a, N - a)));
                         m.cap("c");
                     }});
    R.rhs.push_back({constant(N, sign_of(a * (a + 1) / 2)), "empty", [](Movie&) {}});
    return R;
}

Relation theta_relation(const std::vector<int>& p, int N) {
    if (p.size() != 2 || p[0] < 1 || p[1] < 1 || p[0] + p[1] > N) throw BadParameters("theta: expects a, b >= 1, a+b <= N");
    const int a = p[0], b = p[1];
    Relation R;
    R.lhs.push_back({constant(N, 1), "theta", [a, b, N](Movie& m) {
                         m.cup("o", a + b);
                         m.digon({"o", a, true, b, true, "L", "R", ""});
                         m.decorate("R", pi(b, rho(b, a)));
                         m.decorate("o", pi(a + b, rho(a + b, N - a - b)));
                         m.death("L", "R");
                         m.cap("o");
                     }});
    R.rhs.push_back({constant(N, sign_of((a + b) * (a + b + 1) / 2)), "empty", [](Movie&) {}});
    return R;
}

Relation neck_relation(const std::vector<int>& p, int N) {
    if (p.size() != 1 || p[0] < 1 || p[0] > N) throw BadParameters("neck-cutting: expects a in 1..N");
    const int a = p[0], c = N - a;
    Relation R;
    R.boundary.edge("c", a);
    R.lhs.push_back(identity_term(N));
    for (const YoungDiagram& al : enumerate_box(a, c)) {
        const YoungDiagram hat = dual_in(al, a, c);
        const int sg = sign_of(hat.size() + N * (N + 1) / 2);
        R.rhs.push_back({constant(N, sg), "alpha=" + al.to_string(), [a, c, al, hat](Movie& m) {
                             if (c > 0) {
                                 m.cup("d", c);
                                 m.decorate("d", pi(c, hat));
                                 m.zip({"d", "c", true, true, "n", "", ""});
                                 m.death("c", "d");
                                 m.cap("n");
                             } else {
                                 m.cap("c");
                             }
                             m.cup("c", a);
                             m.decorate("c", pi(a, al));
                         }});
    }
    R.idempotents = true;
    return R;
}

Relation dot_migration_relation(const std::vector<int>& p, int N) {
    if (p.size() < 2 || p[0] < 1 || p[1] < 1 || p[0] + p[1] > N)
        throw BadParameters("dot-migration: expects a, b >= 1, a+b <= N, then the rows of gamma");
    const int a = p[0], b = p[1];
    YoungDiagram gamma(std::vector<int>(p.begin() + 2, p.end()));
    if (gamma.width() > a + b) throw BadParameters("dot-migration: gamma has more columns than a+b");
    Relation R;
    R.boundary.edge("L", a, "@l", "v").edge("R", b, "@r", "v").edge("T", a + b, "v", "@t").vertex("v", "L", "R", "T");
    R.lhs.push_back({constant(N, 1), "gamma", [a, b, gamma](Movie& m) { m.decorate("T", pi(a + b, gamma)); }});
    for (const YoungDiagram& al : enumerate_box(a, gamma.size())) {
        for (const YoungDiagram& be : enumerate_box(b, gamma.size())) {
            Int c = lr_coeff(al, be, gamma);
            if (c == 0) continue;
            R.rhs.push_back({MultiPoly::constant(N, c), al.to_string() + "," + be.to_string(), [a, b, al, be](Movie& m) {
                                 m.decorate("L", pi(a, al));
                                 m.decorate("R", pi(b, be));
                             }});
        }
    }
    return R;
}

// Digon with the r-edge on the right and the s-edge on the left, both
// flowing up; alpha in T(r, s) sits on the r-edge. The digon relation puts
// alpha below the death, the joint relation above it.
Relation digon_relation(const std::vector<int>& p, int N, bool alpha_on_top) {
    if (p.size() != 2 || p[0] < 1 || p[1] < 1 || p[0] + p[1] > N)
        throw BadParameters("digon: expects r, s >= 1, r+s <= N");
    const int r = p[0], s = p[1];
    Relation R;
    R.boundary.edge("in", r + s, "@s", "v1")
        .edge("L", s, "v1", "v2")
        .edge("R", r, "v1", "v2")
        .edge("out", r + s, "v2", "@t")
        .vertex("v1", "L", "R", "in")
        .vertex("v2", "L", "R", "out");
    R.lhs.push_back(identity_term(N));
    for (const YoungDiagram& al : enumerate_box(r, s)) {
        const YoungDiagram hat = dual_in(al, r, s);
        R.rhs.push_back({constant(N, box_sign(hat)), "alpha=" + al.to_string(),
                         [r, s, al, hat, alpha_on_top](Movie& m) {
                             if (alpha_on_top)
                                 m.decorate("L", pi(s, hat));
                             else
                                 m.decorate("R", pi(r, al));
                             m.death("L", "R");
                             m.digon({"in", s, true, r, true, "L", "R", "out"});
                             if (alpha_on_top)
                                 m.decorate("R", pi(r, al));
                             else
                                 m.decorate("L", pi(s, hat));
                         }});
    }
    R.idempotents = true;
    return R;
}

// Digon of an (a+b)-edge going up on the left and a b-edge going down on the right.
Relation digon_dur_relation(const std::vector<int>& p, int N) {
    if (p.size() != 2 || p[0] < 1 || p[1] < 1 || p[0] + p[1] >= N)
        throw BadParameters("digon-dur: expects a, b >= 1, a+b < N");
    const int a = p[0], b = p[1], c = N - a - b;
    Relation R;
    R.boundary.edge("in", a, "@s", "v1")
        .edge("M", a + b, "v1", "v2")
        .edge("B", b, "v2", "v1")
        .edge("out", a, "v2", "@t")
        .vertex("v1", "in", "B", "M")
        .vertex("v2", "out", "B", "M");
    R.lhs.push_back(identity_term(N));
    for (const YoungDiagram& al : enumerate_box(b, c)) {
        const YoungDiagram hat = dual_in(al, b, c);
        R.rhs.push_back({constant(N, box_sign(al)), "alpha=" + al.to_string(), [a, b, c, al, hat](Movie& m) {
                             m.decorate("B", pi(b, al));
                             m.cup("d", c);
                             m.zip({"M", "d", true, true, "n", "M2", ""});
                             m.death("n", "d");
                             m.death("M", "B");
                             m.digon({"in", a + b, true, b, false, "M", "B", "out"});
                             m.cup("d", c);
                             m.decorate("d", pi(c, hat));
                             m.zip({"M", "d", true, true, "n", "M2", ""});
                             m.death("n", "d");
                         }});
    }
    R.idempotents = true;
    return R;
}

// The ladder with uprights 2-1-2 and 1-2-1 and two rungs of label 1, at N = 3.
Web square_web() {
    Web W;
    W.edge("l0", 2, "@bl", "vL1")
        .edge("l1", 1, "vL1", "vL2")
        .edge("l2", 2, "vL2", "@tl")
        .edge("r0", 1, "@br", "vR1")
        .edge("r1", 2, "vR1", "vR2")
        .edge("r2", 1, "vR2", "@tr")
        .edge("x1", 1, "vL1", "vR1")
        .edge("x2", 1, "vR2", "vL2")
        .vertex("vL1", "l1", "x1", "l0")
        .vertex("vR1", "x1", "r0", "r1")
        .vertex("vR2", "x2", "r2", "r1")
        .vertex("vL2", "l1", "x2", "l2");
    return W;
}

Relation square_relation(const std::vector<int>& p, int N) {
    if (p != std::vector<int>{1, 1, 1, 1} || N < 3)
        throw BadParameters("square: only n = m = l = k = 1 with N >= 3 is built");
    Relation R;
    R.boundary = square_web();
    R.lhs.push_back(identity_term(N));
    // j = 1: through two parallel strands labeled 2 and 1.
    R.rhs.push_back({constant(N, 1), "j=1", [](Movie& m) {
                         m.saddle("x1", "x2");
                         m.death("l1", "x1");
                         m.death("r1", "x2");
                         m.digon({"l0", 1, true, 1, true, "l1", "x1", "l2"});
                         m.digon({"r0", 1, false, 2, true, "x2", "r1", "r2"});
                         m.saddle("x1", "x2");
                     }});
    // j = 0: through the web with the rungs slid past each other.
    R.rhs.push_back({constant(N, 1), "j=0", [](Movie& m) {
                         m.singular("x1", "m");
                         m.singular("l1", "u");
                         m.death("r1", "x2");
                         m.digon({"u", 1, false, 2, true, "x2", "r1", "r2"});
                         m.singular("u", "l1");
                         m.singular("m", "x1");
                     }});
    R.idempotents = true;
    return R;
}

// A tree with five leaves on the disk boundary; `flows` are the leaf labels
// signed positive for edges entering the disk, listed counterclockwise.
struct Tree5 {
    Web web;
    std::vector<std::string> inner;
};

std::string vertex_ccw(Web& w, const std::string& name, const std::array<std::string, 3>& ccw,
                       const std::array<int, 3>& inflow) {
    // inflow: signed label flowing into the vertex along each edge
    int t = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(inflow[k]) > std::abs(inflow[t])) t = k;
    const std::string &T = ccw[t], &A = ccw[(t + 1) % 3], &B = ccw[(t + 2) % 3];
    const bool merge = inflow[t] < 0;
    if (merge)
        w.vertex(name, A, B, T);
    else
        w.vertex(name, B, A, T);
    return name;
}

Tree5 caterpillar(const std::array<int, 5>& f) {
    // u1: (p0, p1, e1), u2: (e1, p2, e2), u3: (e2, p3, p4), counterclockwise.
    Tree5 T;
    Web& w = T.web;
    auto leaf = [&](int i, const std::string& v) {
        const std::string n = "p" + std::to_string(i), s = "@s" + std::to_string(i);
        if (f[i] > 0)
            w.edge(n, f[i], s, v);
        else
            w.edge(n, -f[i], v, s);
    };
    leaf(0, "u1");
    leaf(1, "u1");
    leaf(2, "u2");
    leaf(3, "u3");
    leaf(4, "u3");
    const int e1 = f[0] + f[1], e2 = e1 + f[2];
    if (e1 > 0)
        w.edge("e1", e1, "u1", "u2");
    else
        w.edge("e1", -e1, "u2", "u1");
    if (e2 > 0)
        w.edge("e2", e2, "u2", "u3");
    else
        w.edge("e2", -e2, "u3", "u2");
    vertex_ccw(w, "u1", {"p0", "p1", "e1"}, {f[0], f[1], -e1});
    vertex_ccw(w, "u2", {"e1", "p2", "e2"}, {e1, f[2], -e2});
    vertex_ccw(w, "u3", {"e2", "p3", "p4"}, {e2, f[3], f[4]});
    T.inner = {"e1", "e2"};
    return T;
}

// Renames the two inner edges of a five-leaf tree to x and y by the leaves they cut off.
void canonical_inner_names(Movie& m) {
    std::vector<std::string> inner;
    for (const auto& n : m.edge_names())
        if (n[0] != 'p') inner.push_back(n);
    if (inner.size() != 2) throw InvalidMove("five-leaf tree expected");
    // The side facing fewer leaves is a pair of consecutive leaves; sort by the smaller leaf.
    Web w = m.web();
    auto leaves_near = [&](const std::string& e) {
        const WebEdge* x = w.find_edge(e);
        int best = 99;
        for (const auto& v : w.vertices) {
            if (v.name != x->tail.name && v.name != x->head.name) continue;
            int count = 0, lo = 99;
            for (const auto* n : {&v.left, &v.right, &v.thick})
                if ((*n)[0] == 'p') ++count, lo = std::min(lo, std::stoi(n->substr(1)));
            if (count == 2) best = std::min(best, lo);
        }
        return best;
    };
    if (leaves_near(inner[0]) > leaves_near(inner[1])) std::swap(inner[0], inner[1]);
    m.rename(inner[0], "\x01x");
    m.rename(inner[1], "\x01y");
    m.rename("\x01x", "x");
    m.rename("\x01y", "y");
}

Relation mp_relation(const std::vector<int>& p, int N) {
    if (p.size() != 5) throw BadParameters("mp: expects five signed leaf labels");
    std::array<int, 5> f{};
    int total = 0;
    for (int i = 0; i < 5; ++i) {
        f[i] = p[i];
        total += f[i];
        if (f[i] == 0 || std::abs(f[i]) > N) throw BadParameters("mp: leaf labels must be nonzero and at most N");
    }
    if (total != 0) throw BadParameters("mp: leaf flows must balance");
    for (int i = 0; i < 5; ++i) {
        int s = std::abs(f[i] + f[(i + 1) % 5]);
        if (s == 0 || s > N) throw BadParameters("mp: consecutive leaves must carry a label in 1..N");
    }
    Relation R;
    Tree5 T = caterpillar(f);
    R.boundary = T.web;
    // Pentagon of flips: e1, e2 one way round; the other way takes three.
    R.lhs.push_back({constant(N, 1), "two flips", [](Movie& m) {
                         m.singular("e1", "a");
                         m.singular("e2", "b");
                         canonical_inner_names(m);
                     }});
    R.rhs.push_back({constant(N, 1), "three flips", [](Movie& m) {
                         m.singular("e2", "b");
                         m.singular("e1", "a");
                         m.singular("b", "c");
                         canonical_inner_names(m);
                     }});
    return R;
}

}  // namespace

std::vector<std::string> relation_ids() {
    return {"sphere", "theta", "neck-cutting", "dot-migration", "digon", "digon-dur", "joint", "square", "mp"};
}

std::vector<int> default_params(const std::string& id, int N) {
    if (id == "sphere") return N >= 1 ? std::vector<int>{1} : std::vector<int>{};
    if (id == "theta" || id == "digon" || id == "joint") return N >= 2 ? std::vector<int>{1, 1} : std::vector<int>{};
    if (id == "neck-cutting") return N >= 2 ? std::vector<int>{1} : std::vector<int>{};
    if (id == "dot-migration") return N >= 2 ? std::vector<int>{1, 1, 1, 1} : std::vector<int>{};
    if (id == "digon-dur") return N >= 3 ? std::vector<int>{1, 1} : std::vector<int>{};
    if (id == "square") return N >= 3 ? std::vector<int>{1, 1, 1, 1} : std::vector<int>{};
    // Five leaves need every consecutive pair sum in 1..N; the first N that allows it is 4.
    if (id == "mp") return N >= 4 ? std::vector<int>{2, -1, -2, -1, 2} : std::vector<int>{};
    throw BadParameters("unknown relation " + id);
}

Relation build_relation(const std::string& id, const std::vector<int>& params, int N) {
    if (N < 1 || N > kMaxPigments) throw BadParameters("N out of range");
    Relation R;
    if (id == "sphere")
        R = sphere_relation(params, N);
    else if (id == "theta")
        R = theta_relation(params, N);
    else if (id == "neck-cutting")
        R = neck_relation(params, N);
    else if (id == "dot-migration")
        R = dot_migration_relation(params, N);
    else if (id == "digon")
        R = digon_relation(params, N, false);
    else if (id == "joint")
        R = digon_relation(params, N, true);
    else if (id == "digon-dur")
        R = digon_dur_relation(params, N);
    else if (id == "square")
        R = square_relation(params, N);
    else if (id == "mp")
        R = mp_relation(params, N);
    else
        throw BadParameters("unknown relation " + id);
    R.id = id;
    R.params = params;
    R.N = N;
    // Every term must end on the same web.
    std::optional<Web> top;
    for (const auto* side : {&R.lhs, &R.rhs})
        for (const OpenTerm& t : *side) {
            Web w = R.open(t).top;
            if (!top)
                top = w;
            else if (!top->same_as(w))
                throw InvalidMove(id + ": term " + t.name + " ends on a different web");
        }
    return R;
}

std::pair<FoamLinComb, FoamLinComb> close_relation(const Relation& R, const OpenFoam& closure) {
    std::pair<FoamLinComb, FoamLinComb> out;
    for (const OpenTerm& t : R.lhs) out.first.add(t.coeff, glue(R.open(t), closure));
    for (const OpenTerm& t : R.rhs) out.second.add(t.coeff, glue(R.open(t), closure));
    return out;
}

std::vector<OpenFoam> closure_family(const Relation& R, int D) {
    if (D < 0) throw BadParameters("closure degree must be nonnegative");
    std::vector<OpenFoam> out;
    for (const auto* side : {&R.lhs, &R.rhs}) {
        for (const OpenTerm& t : *side) {
            OpenFoam F = R.open(t);
            out.push_back(F);
            for (std::size_t p = 0; p < F.pieces.size(); ++p) {
                const int l = F.pieces[p].label;
                for (int boxes = 1; 2 * boxes <= D; ++boxes) {
                    for (const YoungDiagram& d : enumerate_box(l, boxes)) {
                        if (d.size() != boxes) continue;
                        OpenFoam G = F;
                        G.pieces[p].decoration = G.pieces[p].decoration * pi(l, d);
                        out.push_back(std::move(G));
                    }
                }
            }
        }
    }
    return out;
}

RelationReport verify_relation(const Relation& R, int D, int jobs) {
    const std::vector<OpenFoam> closures = closure_family(R, D);
    RelationReport rep;
    rep.closures = static_cast<int>(closures.size());
    const std::size_t nr = R.rhs.size();
    const bool idem = R.idempotents;
    std::vector<OpenFoam> rhs_open, pairs;
    if (idem) {
        for (const OpenTerm& t : R.rhs) rhs_open.push_back(R.open(t));
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nr; ++j) pairs.push_back(R.compose(R.rhs[i], R.rhs[j]));
    }
    std::vector<std::string> msg(closures.size());
    std::vector<int> fail(closures.size(), 0), ifail(closures.size(), 0), ichecks(closures.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next++) < closures.size();) {
            const OpenFoam& C = closures[c];
            try {
                auto [L, Rr] = close_relation(R, C);
                MultiPoly l = eval_lincomb(L, R.N), r = eval_lincomb(Rr, R.N);
                if (l != r) {
                    fail[c] = 1;
                    msg[c] = "closure " + std::to_string(c) + ": lhs " + l.to_string() + " != rhs " + r.to_string();
                }
                if (!idem) continue;
                std::vector<MultiPoly> single(nr);
                for (std::size_t i = 0; i < nr; ++i) single[i] = R.rhs[i].coeff * eval(glue(rhs_open[i], C));
                for (std::size_t i = 0; i < nr; ++i) {
                    for (std::size_t j = 0; j < nr; ++j) {
                        ++ichecks[c];
                        MultiPoly v = R.rhs[i].coeff * R.rhs[j].coeff * eval(glue(pairs[i * nr + j], C));
                        MultiPoly want = i == j ? single[i] : MultiPoly(R.N);
                        if (v != want) {
                            ++ifail[c];
                            if (msg[c].empty())
                                msg[c] = "closure " + std::to_string(c) + ": terms " + R.rhs[i].name + " then " +
                                         R.rhs[j].name + " give " + v.to_string() + ", expected " + want.to_string();
                        }
                    }
                }
            } catch (const FoamError& e) {
                fail[c] = 1;
                msg[c] = "closure " + std::to_string(c) + ": " + e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(closures.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (std::size_t c = 0; c < closures.size(); ++c) {
        rep.failures += fail[c];
        rep.idempotent_failures += ifail[c];
        rep.idempotent_checks += ichecks[c];
        if (!msg[c].empty()) rep.messages.push_back(msg[c]);
    }
    return rep;
}

// ---------------------------------------------------------------- random zoo

namespace {

struct ZooRng {
    std::mt19937_64 gen;
    explicit ZooRng(std::uint64_t seed) : gen(seed) {}
    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
    bool coin() { return gen() & 1; }
};

SchurCombo random_decoration(ZooRng& r, int label) {
    // Homogeneous: one or two diagrams of the same size.
    const int boxes = r.below(3);
    std::vector<YoungDiagram> pool;
    for (const YoungDiagram& d : enumerate_box(label, boxes))
        if (d.size() == boxes) pool.push_back(d);
    SchurCombo c(label);
    if (pool.empty()) return SchurCombo::one(label);
    c.add(pool[r.below(static_cast<int>(pool.size()))], 1);
    if (r.coin()) c.add(pool[r.below(static_cast<int>(pool.size()))], r.coin() ? 1 : -1);
    return c.is_zero() ? SchurCombo::one(label) : c;
}

// Random local moves keeping the web connected (or empty), so every face is known.
struct RandomMovie {
    int N;
    ZooRng moves;
    int fresh = 0;
    std::vector<std::pair<std::string, SchurCombo>> decorations;  // applied after the moves

    std::string name() { return "e" + std::to_string(fresh++); }

    bool connected(const Movie& m) const {
        auto c = m.components();
        for (const auto& [n, k] : c)
            if (k != 0) return false;
        return true;
    }

    bool try_move(Movie& m) {
        const auto names = m.edge_names();
        const int kind = moves.below(names.empty() ? 1 : 7);
        Movie probe = m;
        try {
            switch (kind) {
                case 0: {  // new circle, zipped to the web if there is one
                    const int l = 1 + moves.below(N);
                    const std::string c = name();
                    probe.cup(c, l);
                    if (!names.empty()) {
                        auto faces = m.faces();
                        const auto& f = faces[moves.below(static_cast<int>(faces.size()))];
                        const auto& d = f[moves.below(static_cast<int>(f.size()))];
                        probe.zip({d.edge, c, !d.forward, moves.coin(), name(), name(), ""});
                    }
                    break;
                }
                case 1: {  // digon birth
                    const std::string e = names[moves.below(static_cast<int>(names.size()))];
                    const int l = m.label(e);
                    if (moves.coin()) {
                        if (l < 2) return false;
                        const int x = 1 + moves.below(l - 1);
                        probe.digon({e, x, true, l - x, true, name(), name(), name()});
                    } else {
                        const int x = 1 + moves.below(N);
                        if (l + x > N) return false;
                        if (moves.coin())
                            probe.digon({e, l + x, true, x, false, name(), name(), name()});
                        else
                            probe.digon({e, x, false, l + x, true, name(), name(), name()});
                    }
                    break;
                }
                case 2: {  // zip across a face
                    auto faces = m.faces();
                    const auto& f = faces[moves.below(static_cast<int>(faces.size()))];
                    if (f.size() < 2) return false;
                    const auto& d1 = f[moves.below(static_cast<int>(f.size()))];
                    const auto& d2 = f[moves.below(static_cast<int>(f.size()))];
                    if (d1.edge == d2.edge) return false;
                    probe.zip({d1.edge, d2.edge, !d1.forward, d2.forward, name(), name(), name()});
                    break;
                }
                case 3: {
                    auto c = m.singular_candidates();
                    if (c.empty()) return false;
                    probe.singular(c[moves.below(static_cast<int>(c.size()))], name());
                    break;
                }
                case 4: {
                    auto c = m.death_candidates();
                    if (c.empty()) return false;
                    probe.death(c[moves.below(static_cast<int>(c.size()))]);
                    break;
                }
                case 5: {  // saddle across a face that keeps the web connected
                    auto faces = m.faces();
                    const auto& f = faces[moves.below(static_cast<int>(faces.size()))];
                    if (f.size() < 2) return false;
                    const auto& d1 = f[moves.below(static_cast<int>(f.size()))];
                    const auto& d2 = f[moves.below(static_cast<int>(f.size()))];
                    if (d1.edge == d2.edge || d1.forward != d2.forward) return false;
                    if (m.label(d1.edge) != m.label(d2.edge)) return false;
                    probe.saddle(d1.edge, d2.edge);
                    break;
                }
                default: {
                    if (names.size() == 1 && m.web().edges[0].is_circle()) {
                        probe.cap(names[0]);
                    } else {
                        const std::string e = names[moves.below(static_cast<int>(names.size()))];
                        decorations.push_back({e, SchurCombo()});
                        probe.decorate(e, SchurCombo::one(m.label(e)));
                    }
                    break;
                }
            }
        } catch (const InvalidMove&) {
            return false;
        }
        if (!connected(probe)) return false;
        m = probe;
        return true;
    }
};

Movie random_movie(std::uint64_t seed, int N, int steps, std::uint64_t dec_seed) {
    RandomMovie rm{N, ZooRng(seed), 0, {}};
    Movie m(N);
    std::vector<std::string> decorate_at;
    int done = 0, tries = 0;
    while (done < steps && tries < 50 * steps) {
        ++tries;
        const std::size_t before = rm.decorations.size();
        Movie snapshot = m;
        if (!rm.try_move(m)) continue;
        ++done;
        if (rm.decorations.size() != before) {
            // Decoration slots are filled from a separate stream so copies can differ.
            ZooRng dr(dec_seed + 7919 * rm.decorations.size());
            const std::string e = rm.decorations.back().first;
            m = snapshot;
            m.decorate(e, random_decoration(dr, m.label(e)));
        }
    }
    if (m.edge_names().empty()) m.cup(rm.name(), 1 + rm.moves.below(N));
    return m;
}

}  // namespace

Foam random_zoo_foam(std::uint64_t seed, int N, int steps) {
    Movie a = random_movie(seed, N, steps, seed * 31 + 1);
    Movie b = random_movie(seed, N, steps, seed * 31 + 2);
    Foam F = glue(a.finish(), b.finish());
    // Negative degree forces a zero value; decorate plain facets up to degree 0.
    int deg = foam_degree(F);
    ZooRng r(seed * 131 + 5);
    std::vector<int> plain;
    for (int f = 0; f < static_cast<int>(F.facets.size()); ++f)
        if (F.facets[f].decoration.is_one() && F.facets[f].label < N) plain.push_back(f);
    std::shuffle(plain.begin(), plain.end(), r.gen);
    for (int f : plain) {
        if (deg >= 0) break;
        const int l = F.facets[f].label, boxes = std::min(-deg / 2, l * (N - l));
        std::vector<YoungDiagram> pool;
        for (const YoungDiagram& d : enumerate_box(l, N - l))
            if (d.size() == boxes) pool.push_back(d);
        if (pool.empty()) continue;
        F.facets[f].decoration = pi(l, pool[r.below(static_cast<int>(pool.size()))]);
        deg += 2 * boxes;
    }
    return F;
}

std::vector<ZooEntry> zoo(int N, int random_count) {
    std::vector<ZooEntry> out;
    for (int a = 1; a <= N; ++a) {
        out.push_back({"sphere(" + std::to_string(a) + ")", build_sphere(a, SchurCombo::one(a), N)});
        out.push_back({"sphere(" + std::to_string(a) + ",top)", build_sphere(a, pi(a, rho(a, N - a)), N)});
        out.push_back({"torus(" + std::to_string(a) + ")", build_graph_times_circle(MoyGraph::circle(a, N))});
    }
    for (int a = 1; a < N; ++a)
        for (int b = 1; a + b <= N; ++b) {
            const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            out.push_back({"theta" + tag, build_theta(a, b, SchurCombo::one(a), pi(b, rho(b, a)),
                                                      pi(a + b, rho(a + b, N - a - b)), N)});
            if (a + b == N) {
                out.push_back({"theta-x-circle" + tag, build_graph_times_circle(MoyGraph::theta({a, b}))});
                GenThetaDecorations d;
                d.layers.push_back({SchurCombo::one(a), pi(b, YoungDiagram({1}))});
                out.push_back({"gen-theta" + tag, build_gen_theta_closed({a, b}, d)});
            }
        }
    if (N >= 3) {
        std::vector<int> ones(N, 1);
        out.push_back({"theta-x-circle(1^N)", build_graph_times_circle(MoyGraph::theta(ones))});
        GenThetaDecorations d;
        d.layers.push_back(std::vector<SchurCombo>(N, SchurCombo()));
        d.layers[0].back() = pi(1, YoungDiagram({1}));
        out.push_back({"gen-theta(1^N)", build_gen_theta_closed(ones, d)});
    }
    for (const std::string& id : relation_ids()) {
        auto p = default_params(id, N);
        if (p.empty() && id != "sphere") continue;
        Relation R = build_relation(id, p, N);
        int k = 0;
        for (const auto* side : {&R.lhs, &R.rhs})
            for (const OpenTerm& t : *side) {
                OpenFoam F = R.open(t);
                out.push_back({id + "-double-" + std::to_string(k++), glue(F, F)});
            }
    }
    for (int s = 1; s <= random_count; ++s)
        out.push_back({"random-" + std::to_string(s), random_zoo_foam(static_cast<std::uint64_t>(s), N)});
    return out;
}

}  // namespace foam
