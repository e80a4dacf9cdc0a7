#include "foam/movie.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "foam/errors.hpp"

namespace foam {

namespace {

std::string key_of(const std::string& left, const std::string& right, const std::string& thick, bool merge) {
    return (merge ? "M(" : "S(") + left + "," + right + "," + thick + ")";
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::array<std::string, 3> rotate_to(std::array<std::string, 3> c, const std::string& first) {
    while (c[0] != first) std::rotate(c.begin(), c.begin() + 1, c.end());
    return c;
}

}  // namespace

// ---------------------------------------------------------------- Web

Web& Web::edge(const std::string& name, int label, const std::string& tail, const std::string& head) {
    auto end_of = [](const std::string& s) {
        WebEnd e;
        if (s.empty()) return e;
        if (s[0] == '@') {
            e.kind = WebEnd::Side;
            e.name = s.substr(1);
        } else {
            e.kind = WebEnd::Vertex;
            e.name = s;
        }
        return e;
    };
    if (tail.empty() != head.empty()) throw InvalidMove("edge " + name + ": only one endpoint given");
    edges.push_back({name, label, end_of(tail), end_of(head)});
    return *this;
}

Web& Web::vertex(const std::string& name, const std::string& left, const std::string& right,
                 const std::string& thick) {
    vertices.push_back({name, left, right, thick});
    return *this;
}

const WebEdge* Web::find_edge(const std::string& name) const {
    for (const auto& e : edges)
        if (e.name == name) return &e;
    return nullptr;
}

std::map<std::string, std::string> Web::canonical() const {
    std::map<std::string, std::string> vkey;
    std::map<std::string, std::string> out;
    for (const auto& v : vertices) {
        const WebEdge* t = find_edge(v.thick);
        if (!t) throw InvalidMove("vertex " + v.name + ": unknown edge " + v.thick);
        vkey[v.name] = key_of(v.left, v.right, v.thick, t->tail.kind == WebEnd::Vertex && t->tail.name == v.name);
        out["vertex " + vkey[v.name]] = "";
    }
    auto end_key = [&](const WebEnd& e) -> std::string {
        switch (e.kind) {
            case WebEnd::None: return "";
            case WebEnd::Side: return "@" + e.name;
            case WebEnd::Vertex: {
                auto it = vkey.find(e.name);
                if (it == vkey.end()) throw InvalidMove("edge end at unknown vertex " + e.name);
                return it->second;
            }
        }
        return "";
    };
    for (const auto& e : edges)
        out["edge " + e.name] = std::to_string(e.label) + "|" + end_key(e.tail) + "|" + end_key(e.head);
    return out;
}

// ---------------------------------------------------------------- Movie

Movie::Movie(int N, const Web& bottom) : N_(N), bottom_(bottom) {
    std::map<std::string, int> vid;
    for (const auto& v : bottom.vertices) {
        if (vid.count(v.name)) throw InvalidMove("duplicate vertex " + v.name);
        vid[v.name] = next_vertex_++;
    }
    for (const auto& e : bottom.edges) {
        if (edges_.count(e.name)) throw InvalidMove("duplicate edge " + e.name);
        if (e.label < 1 || e.label > N) throw InvalidMove("edge " + e.name + ": label out of range");
        EdgeSt st;
        st.label = e.label;
        auto conv = [&](const WebEnd& w) {
            End x;
            x.kind = w.kind;
            if (w.kind == WebEnd::Vertex) {
                auto it = vid.find(w.name);
                if (it == vid.end()) throw InvalidMove("edge " + e.name + ": unknown vertex " + w.name);
                x.vertex = it->second;
            } else if (w.kind == WebEnd::Side) {
                x.side = w.name;
            }
            return x;
        };
        st.tail = conv(e.tail);
        st.head = conv(e.head);
        st.piece = new_piece(e.label);
        bottom_piece_[e.name] = st.piece;
        edges_[e.name] = st;
    }
    for (const auto& v : bottom.vertices) {
        int id = vid[v.name];
        VertSt vs;
        vs.left = v.left;
        vs.right = v.right;
        vs.thick = v.thick;
        for (const auto* n : {&v.left, &v.right, &v.thick}) {
            if (!edges_.count(*n)) throw InvalidMove("vertex " + v.name + ": unknown edge " + *n);
            const EdgeSt& e = edges_.at(*n);
            if (!(e.tail.kind == WebEnd::Vertex && e.tail.vertex == id) &&
                !(e.head.kind == WebEnd::Vertex && e.head.vertex == id))
                throw InvalidMove("vertex " + v.name + ": edge " + *n + " does not end there");
        }
        const EdgeSt& t = edges_.at(v.thick);
        vs.merge = t.tail.kind == WebEnd::Vertex && t.tail.vertex == id;
        std::array<std::string, 3> c =
            vs.merge ? std::array<std::string, 3>{v.thick, v.left, v.right}
                     : std::array<std::string, 3>{v.thick, v.right, v.left};
        make_vertex_at(id, c);
        if (verts_[id].left != v.left) throw InvalidMove("vertex " + v.name + ": thick edge is not the largest");
        segs_[verts_[id].seg].ends[vs.merge ? 0 : 1] = {SegEnd::Bottom, -1, -1, -1, vertex_key(id)};
    }
}

Movie::EdgeSt& Movie::edge_at(const std::string& name) {
    auto it = edges_.find(name);
    if (it == edges_.end()) throw InvalidMove("no edge named " + name);
    return it->second;
}

const Movie::EdgeSt& Movie::edge_at(const std::string& name) const {
    auto it = edges_.find(name);
    if (it == edges_.end()) throw InvalidMove("no edge named " + name);
    return it->second;
}

int Movie::label(const std::string& edge) const { return edge_at(edge).label; }

int Movie::find(int p) const {
    while (parent_[p] != p) p = parent_[p];
    return p;
}

void Movie::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (pieces_[a].label != pieces_[b].label) throw InvalidMove("joining facets of different labels");
    parent_[std::max(a, b)] = std::min(a, b);
}

int Movie::new_piece(int label) {
    pieces_.push_back({label, 0, SchurCombo::one(label)});
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(pieces_.size()) - 1;
}

void Movie::slab_and_level(const std::map<std::string, int>& override_chi) {
    // A slab adds an open strip per interval edge; the critical level then adds
    // the level set with compact support, -1 per open interval, 0 per circle.
    for (const auto& [name, e] : edges_) {
        bool interval = e.tail.kind != WebEnd::None;
        int level = interval ? -1 : 0;
        auto it = override_chi.find(name);
        if (it != override_chi.end()) level = it->second;
        pieces_[e.piece].chi += (interval ? 1 : 0) + level;
    }
}

bool Movie::incoming(const std::string& e, int v) const {
    const EdgeSt& x = edge_at(e);
    return x.head.kind == WebEnd::Vertex && x.head.vertex == v;
}

std::array<std::string, 3> Movie::ccw(int v) const {
    const VertSt& x = verts_.at(v);
    if (x.merge) return {x.thick, x.left, x.right};
    return {x.thick, x.right, x.left};
}

std::string Movie::vertex_key(int v) const {
    const VertSt& x = verts_.at(v);
    return key_of(x.left, x.right, x.thick, x.merge);
}

int Movie::make_vertex(const std::array<std::string, 3>& ccw_names) {
    return make_vertex_at(next_vertex_++, ccw_names);
}

int Movie::make_vertex_at(int id, const std::array<std::string, 3>& c) {
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) throw InvalidMove("edge meets a vertex twice");
    int t = 0;
    for (int k = 1; k < 3; ++k)
        if (edge_at(c[k]).label > edge_at(c[t]).label) t = k;
    std::array<std::string, 3> r{c[t], c[(t + 1) % 3], c[(t + 2) % 3]};
    const EdgeSt &T = edge_at(r[0]), &A = edge_at(r[1]), &B = edge_at(r[2]);
    if (A.label + B.label != T.label) throw InvalidMove("labels do not add up at a vertex (" + r[0] + ")");
    auto at = [&](const EdgeSt& e, bool head) {
        const End& x = head ? e.head : e.tail;
        return x.kind == WebEnd::Vertex && x.vertex == id;
    };
    VertSt v;
    if (at(T, false) && at(A, true) && at(B, true)) {
        v.merge = true;
        v.thick = r[0];
        v.left = r[1];
        v.right = r[2];
    } else if (at(T, true) && at(A, false) && at(B, false)) {
        v.merge = false;
        v.thick = r[0];
        v.right = r[1];
        v.left = r[2];
    } else {
        throw InvalidMove("flow is not preserved at a vertex (" + r[0] + ")");
    }
    Segment s;
    s.sides = {edge_at(v.left).piece, edge_at(v.right).piece, edge_at(v.thick).piece};
    v.seg = static_cast<int>(segs_.size());
    segs_.push_back(s);
    verts_[id] = v;
    return id;
}

void Movie::replace_at_end(const End& e, const std::string& from, const std::string& to) {
    if (e.kind != WebEnd::Vertex) return;
    VertSt& v = verts_.at(e.vertex);
    for (std::string* s : {&v.left, &v.right, &v.thick})
        if (*s == from) *s = to;
}

std::vector<std::string> Movie::edges_at(int v) const {
    const VertSt& x = verts_.at(v);
    return {x.left, x.right, x.thick};
}

std::vector<std::string> Movie::shared_edges(int v, int w) const {
    std::vector<std::string> out;
    for (const auto& n : edges_at(v)) {
        const EdgeSt& e = edge_at(n);
        int o = (e.tail.kind == WebEnd::Vertex && e.tail.vertex == v) ? e.head.vertex : e.tail.vertex;
        const End& oe = (e.tail.kind == WebEnd::Vertex && e.tail.vertex == v) ? e.head : e.tail;
        if (oe.kind == WebEnd::Vertex && o == w) out.push_back(n);
    }
    return out;
}

void Movie::join_pair(int v, int w, bool birth) {
    int sv = verts_.at(v).seg, sw = verts_.at(w).seg;
    bool mv = verts_.at(v).merge, mw = verts_.at(w).merge;
    if (mv == mw) throw InvalidMove("a binding extremum needs one merge and one split vertex");
    int m = mv ? sv : sw, s = mv ? sw : sv;
    // A merge front runs forward in time and a split front backward, so a
    // birth joins the merge tail to the split head and a death the reverse.
    if (birth) {
        segs_[m].ends[0] = {SegEnd::Join, s, 1, -1, ""};
        segs_[s].ends[1] = {SegEnd::Join, m, 0, -1, ""};
    } else {
        segs_[m].ends[1] = {SegEnd::Join, s, 0, -1, ""};
        segs_[s].ends[0] = {SegEnd::Join, m, 1, -1, ""};
    }
}

void Movie::join_edges(const std::string& a, const std::string& b, int v, int w) {
    auto in_blob = [&](const End& e) { return e.kind == WebEnd::Vertex && (e.vertex == v || e.vertex == w); };
    if (a == b) {
        EdgeSt& e = edge_at(a);
        if (!in_blob(e.tail) || !in_blob(e.head)) throw InvalidMove("bad loop join");
        e.tail = End{};
        e.head = End{};
        return;
    }
    const EdgeSt &A = edge_at(a), &B = edge_at(b);
    if (A.label != B.label) throw InvalidMove("joining edges " + a + ", " + b + " of different labels");
    std::string in, out;
    if (in_blob(A.head) && in_blob(B.tail)) {
        in = a;
        out = b;
    } else if (in_blob(B.head) && in_blob(A.tail)) {
        in = b;
        out = a;
    } else {
        throw InvalidMove("joining edges " + a + ", " + b + " against their orientation");
    }
    unite(edge_at(in).piece, edge_at(out).piece);
    EdgeSt O = edge_at(out);
    EdgeSt& I = edge_at(in);
    if (O.head.kind == WebEnd::Vertex && I.tail.kind == WebEnd::Vertex && O.head.vertex == I.tail.vertex)
        throw InvalidMove("join would create a loop at a vertex");
    I.head = O.head;
    edges_.erase(out);
    replace_at_end(O.head, out, in);
}

void Movie::cup(const std::string& name, int label) {
    if (edges_.count(name)) throw InvalidMove("edge " + name + " exists");
    if (label < 1 || label > N_) throw InvalidMove("cup label out of range");
    slab_and_level({});
    EdgeSt e;
    e.label = label;
    e.piece = new_piece(label);
    pieces_[e.piece].chi += 1;
    edges_[name] = e;
}

void Movie::cap(const std::string& edge) {
    if (!edge_at(edge).is_circle_()) throw InvalidMove("cap of non-circle " + edge);
    slab_and_level({{edge, 1}});
    edges_.erase(edge);
}

void Movie::saddle(const std::string& e1, const std::string& e2) {
    if (e1 == e2) throw InvalidMove("saddle needs two edges");
    if (edge_at(e1).label != edge_at(e2).label) throw InvalidMove("saddle of edges with different labels");
    slab_and_level({});
    pieces_[edge_at(e1).piece].chi -= 1;
    unite(edge_at(e1).piece, edge_at(e2).piece);
    EdgeSt& A = edge_at(e1);
    EdgeSt& B = edge_at(e2);
    bool ca = A.is_circle_(), cb = B.is_circle_();
    if (ca && cb) {
        edges_.erase(e2);
    } else if (cb) {
        edges_.erase(e2);
    } else if (ca) {
        edges_.erase(e1);
    } else {
        End h1 = A.head, h2 = B.head;
        const std::string tmp = "\x01swap";
        replace_at_end(h1, e1, tmp);
        replace_at_end(h2, e2, e1);
        replace_at_end(h1, tmp, e2);
        A.head = h2;
        B.head = h1;
        for (const EdgeSt* x : {&A, &B})
            if (x->tail.kind == WebEnd::Vertex && x->head.kind == WebEnd::Vertex &&
                x->tail.vertex == x->head.vertex)
                throw InvalidMove("saddle creates a loop at a vertex");
    }
}

// Splits `name` at a new pinch point between south vertex vs and north vertex vn.
// Returns the (south, north) pieces.
std::pair<std::string, std::string> Movie::cut(const std::string& name, bool north, int vs, int vn,
                                               const std::string& new_name) {
    EdgeSt& e = edge_at(name);
    End S{WebEnd::Vertex, vs, ""}, Nn{WebEnd::Vertex, vn, ""};
    if (e.is_circle_()) {
        e.tail = north ? Nn : S;
        e.head = north ? S : Nn;
        return {name, name};
    }
    if (new_name.empty() || edges_.count(new_name)) throw InvalidMove("cut of " + name + " needs a fresh name");
    EdgeSt ne = e;
    ne.tail = north ? Nn : S;
    replace_at_end(e.head, name, new_name);
    e.head = north ? S : Nn;
    edges_[new_name] = ne;
    if (north) return {name, new_name};
    return {new_name, name};
}

void Movie::zip(const Zip& z) {
    if (z.left == z.right) throw InvalidMove("zip needs two edges");
    edge_at(z.left);
    edge_at(z.right);
    if (z.inner.empty() || edges_.count(z.inner)) throw InvalidMove("zip needs a fresh inner name");
    slab_and_level({});
    pieces_[edge_at(z.left).piece].chi -= 1;
    pieces_[edge_at(z.right).piece].chi -= 1;
    int vs = next_vertex_++, vn = next_vertex_++;
    auto [ls, ln] = cut(z.left, z.left_north, vs, vn, z.left_new);
    auto [rs, rn] = cut(z.right, z.right_north, vs, vn, z.right_new);
    int net = (incoming(ls, vs) ? 1 : -1) * edge_at(ls).label + (incoming(rs, vs) ? 1 : -1) * edge_at(rs).label;
    if (net == 0) throw InvalidMove("zip would create a 0-labeled edge");
    if (std::abs(net) > N_) throw InvalidMove("zip label exceeds N");
    EdgeSt in;
    in.label = std::abs(net);
    in.tail = {WebEnd::Vertex, net > 0 ? vs : vn, ""};
    in.head = {WebEnd::Vertex, net > 0 ? vn : vs, ""};
    in.piece = new_piece(in.label);
    edges_[z.inner] = in;
    make_vertex_at(vs, {z.inner, ls, rs});
    make_vertex_at(vn, {z.inner, rn, ln});
    join_pair(vs, vn, true);
}

void Movie::digon(const Digon& d) {
    edge_at(d.outer);
    for (const auto* n : {&d.left, &d.right})
        if (n->empty() || edges_.count(*n)) throw InvalidMove("digon needs fresh inner names");
    if (d.left == d.right) throw InvalidMove("digon inner names must differ");
    for (int l : {d.left_label, d.right_label})
        if (l < 1 || l > N_) throw InvalidMove("digon label out of range");
    slab_and_level({});
    pieces_[edge_at(d.outer).piece].chi -= 1;
    int vs = next_vertex_++, vn = next_vertex_++;
    auto [os, on] = cut(d.outer, true, vs, vn, d.outer_new);
    auto add = [&](const std::string& name, int label, bool north) {
        EdgeSt e;
        e.label = label;
        e.tail = {WebEnd::Vertex, north ? vs : vn, ""};
        e.head = {WebEnd::Vertex, north ? vn : vs, ""};
        e.piece = new_piece(label);
        edges_[name] = e;
    };
    add(d.left, d.left_label, d.left_north);
    add(d.right, d.right_label, d.right_north);
    make_vertex_at(vs, {os, d.right, d.left});
    make_vertex_at(vn, {on, d.left, d.right});
    join_pair(vs, vn, true);
}

std::pair<int, int> Movie::ends_of_inner(const std::string& edge) const {
    const EdgeSt& e = edge_at(edge);
    if (e.tail.kind != WebEnd::Vertex || e.head.kind != WebEnd::Vertex)
        throw InvalidMove("edge " + edge + " does not join two vertices");
    return {e.tail.vertex, e.head.vertex};
}

void Movie::death(const std::string& edge, const std::string& partner) {
    auto [v, w] = ends_of_inner(edge);
    auto sh = shared_edges(v, w);
    if (!partner.empty()) {
        if (std::find(sh.begin(), sh.end(), partner) == sh.end() || partner == edge)
            throw InvalidMove("death: " + partner + " does not join the same vertices as " + edge);
        sh = {edge, partner};
    } else if (sh.size() == 3) {
        throw InvalidMove("death at " + edge + ": theta web, name the second edge");
    }
    std::map<std::string, int> ov;
    for (const auto& s : sh) ov[s] = 0;
    if (sh.size() == 1) {
        auto cv = rotate_to(ccw(v), edge), cw = rotate_to(ccw(w), edge);
        // Validate the reconnection before touching any state.
        auto pair_ok = [&](const std::string& a, const std::string& b) {
            return edge_at(a).label == edge_at(b).label && incoming(a, v) != incoming(b, w);
        };
        if (!pair_ok(cv[2], cw[1]) || !pair_ok(cv[1], cw[2])) throw InvalidMove("unzip at " + edge + " breaks flow");
        slab_and_level(ov);
        join_pair(v, w, false);
        edges_.erase(edge);
        join_edges(cv[2], cw[1], v, w);
        join_edges(cw[2], cv[1], v, w);
    } else if (sh.size() == 2) {
        std::string x, y;
        for (const auto& n : edges_at(v))
            if (n != sh[0] && n != sh[1]) x = n;
        for (const auto& n : edges_at(w))
            if (n != sh[0] && n != sh[1]) y = n;
        if (x != y && (edge_at(x).label != edge_at(y).label || incoming(x, v) == incoming(y, w)))
            throw InvalidMove("digon death at " + edge + " breaks flow");
        // The two edges must bound a face: the cyclic orders at v and w are mirror images.
        auto cv = rotate_to(ccw(v), x), cw = rotate_to(ccw(w), y);
        if (cv[1] != cw[2] || cv[2] != cw[1]) throw InvalidMove("death at " + edge + ": the digon is not a face");
        slab_and_level(ov);
        join_pair(v, w, false);
        edges_.erase(sh[0]);
        edges_.erase(sh[1]);
        join_edges(x, y, v, w);
    } else {
        throw InvalidMove("death at " + edge + ": unexpected number of shared edges");
    }
    verts_.erase(v);
    verts_.erase(w);
}

void Movie::singular(const std::string& edge, const std::string& new_edge) {
    auto [v, w] = ends_of_inner(edge);
    if (shared_edges(v, w).size() != 1) throw InvalidMove("singular move on a digon edge " + edge);
    if (new_edge.empty() || (new_edge != edge && edges_.count(new_edge)))
        throw InvalidMove("singular move needs a fresh name");
    auto cv = rotate_to(ccw(v), edge), cw = rotate_to(ccw(w), edge);
    const std::string &x1 = cv[1], &x2 = cv[2], &y1 = cw[1], &y2 = cw[2];
    auto flow_in = [&](const std::string& e, int at) { return (incoming(e, at) ? 1 : -1) * edge_at(e).label; };
    int net = flow_in(x2, v) + flow_in(y1, w);
    if (net == 0) throw InvalidMove("singular move would create a 0-labeled edge");
    if (std::abs(net) > N_) throw InvalidMove("singular move label exceeds N");
    slab_and_level({{edge, 0}});
    int seg_v = verts_.at(v).seg, seg_w = verts_.at(w).seg;
    int end_v = verts_.at(v).merge ? 1 : 0, end_w = verts_.at(w).merge ? 1 : 0;
    int p = static_cast<int>(points_.size());
    segs_[seg_v].ends[end_v] = {SegEnd::Point, -1, -1, p, ""};
    segs_[seg_w].ends[end_w] = {SegEnd::Point, -1, -1, p, ""};
    edges_.erase(edge);
    verts_.erase(v);
    verts_.erase(w);
    int a = next_vertex_++, b = next_vertex_++;
    auto move_end = [&](const std::string& e, int to) {
        EdgeSt& x = edge_at(e);
        End& end = (x.tail.kind == WebEnd::Vertex && (x.tail.vertex == v || x.tail.vertex == w)) ? x.tail : x.head;
        end.vertex = to;
    };
    move_end(x2, a);
    move_end(y1, a);
    move_end(y2, b);
    move_end(x1, b);
    EdgeSt m;
    m.label = std::abs(net);
    m.tail = {WebEnd::Vertex, net > 0 ? a : b, ""};
    m.head = {WebEnd::Vertex, net > 0 ? b : a, ""};
    m.piece = new_piece(m.label);
    edges_[new_edge] = m;
    make_vertex_at(a, {new_edge, x2, y1});
    make_vertex_at(b, {new_edge, y2, x1});
    int seg_a = verts_.at(a).seg, seg_b = verts_.at(b).seg;
    int end_a = verts_.at(a).merge ? 0 : 1, end_b = verts_.at(b).merge ? 0 : 1;
    segs_[seg_a].ends[end_a] = {SegEnd::Point, -1, -1, p, ""};
    segs_[seg_b].ends[end_b] = {SegEnd::Point, -1, -1, p, ""};
    points_.push_back({{{seg_v, end_v}, {seg_w, end_w}, {seg_a, end_a}, {seg_b, end_b}}});
}

void Movie::rename(const std::string& from, const std::string& to) {
    if (from == to) return;
    if (edges_.count(to)) throw InvalidMove("rename target " + to + " exists");
    EdgeSt e = edge_at(from);
    edges_.erase(from);
    edges_[to] = e;
    replace_at_end(e.tail, from, to);
    replace_at_end(e.head, from, to);
}

void Movie::decorate(const std::string& edge, const SchurCombo& d) {
    EdgeSt& e = edge_at(edge);
    if (d.arity() != e.label) throw ArityMismatch("decoration arity differs from the edge label");
    pieces_[e.piece].decoration = pieces_[e.piece].decoration * d;
}

std::vector<std::string> Movie::edge_names() const {
    std::vector<std::string> out;
    for (const auto& [n, e] : edges_) out.push_back(n);
    return out;
}

std::vector<std::string> Movie::death_candidates() const {
    std::vector<std::string> out;
    for (const auto& [n, e] : edges_) {
        if (e.tail.kind != WebEnd::Vertex || e.head.kind != WebEnd::Vertex) continue;
        auto sh = shared_edges(e.tail.vertex, e.head.vertex);
        if (verts_.at(e.tail.vertex).merge == verts_.at(e.head.vertex).merge) continue;
        if (sh.size() == 2 && sh[0] != n) continue;
        Movie probe = *this;
        try {
            probe.death(n);
        } catch (const InvalidMove&) {
            continue;
        }
        out.push_back(n);
    }
    return out;
}

std::vector<std::string> Movie::singular_candidates() const {
    std::vector<std::string> out;
    for (const auto& [n, e] : edges_) {
        if (e.tail.kind != WebEnd::Vertex || e.head.kind != WebEnd::Vertex) continue;
        if (shared_edges(e.tail.vertex, e.head.vertex).size() != 1) continue;
        Movie probe = *this;
        try {
            probe.singular(n, n);
        } catch (const InvalidMove&) {
            continue;
        }
        out.push_back(n);
    }
    return out;
}

std::map<std::string, int> Movie::components() const {
    std::map<std::string, int> idx;
    std::vector<std::string> names;
    for (const auto& [n, e] : edges_) {
        idx[n] = static_cast<int>(names.size());
        names.push_back(n);
    }
    Dsu d(static_cast<int>(names.size()));
    for (const auto& [v, x] : verts_) {
        d.unite(idx[x.thick], idx[x.left]);
        d.unite(idx[x.thick], idx[x.right]);
    }
    std::map<int, int> number;
    std::map<std::string, int> out;
    for (const auto& n : names) {
        int r = d.find(idx[n]);
        if (!number.count(r)) number[r] = static_cast<int>(number.size());
        out[n] = number[r];
    }
    return out;
}

std::vector<std::vector<Movie::Dart>> Movie::faces() const {
    std::vector<std::vector<Dart>> out;
    std::set<std::pair<std::string, bool>> seen;
    for (const auto& [n, e] : edges_) {
        if (e.tail.kind == WebEnd::Side || e.head.kind == WebEnd::Side)
            throw InvalidMove("face tracing needs a web without side points");
        for (bool fw : {true, false}) {
            if (seen.count({n, fw})) continue;
            std::vector<Dart> face;
            std::string cur = n;
            bool f = fw;
            while (!seen.count({cur, f})) {
                seen.insert({cur, f});
                face.push_back({cur, f});
                const EdgeSt& x = edge_at(cur);
                if (x.tail.kind == WebEnd::None) break;
                // The face stays on the left: leave along the next edge counterclockwise.
                int v = f ? x.head.vertex : x.tail.vertex;
                auto c = rotate_to(ccw(v), cur);
                cur = c[1];
                f = edge_at(cur).tail.vertex == v;
            }
            out.push_back(face);
        }
    }
    return out;
}

Web Movie::web() const {
    Web w;
    auto end_name = [](const End& e) -> std::string {
        if (e.kind == WebEnd::Vertex) return "v" + std::to_string(e.vertex);
        if (e.kind == WebEnd::Side) return "@" + e.side;
        return "";
    };
    for (const auto& [n, e] : edges_) w.edge(n, e.label, end_name(e.tail), end_name(e.head));
    for (const auto& [id, v] : verts_) w.vertex("v" + std::to_string(id), v.left, v.right, v.thick);
    return w;
}

OpenFoam Movie::finish() const {
    Movie m = *this;
    // Final slab: one open strip per interval edge.
    for (const auto& [n, e] : m.edges_)
        if (!e.is_circle_()) m.pieces_[e.piece].chi += 1;
    for (const auto& [id, v] : m.verts_) {
        Segment& s = m.segs_[v.seg];
        int end = v.merge ? 1 : 0;
        if (s.ends[end].kind != SegEnd::Open) throw InvalidMove("vertex front already closed");
        s.ends[end] = {SegEnd::Top, -1, -1, -1, m.vertex_key(id)};
    }
    OpenFoam F;
    F.N = N_;
    std::map<int, int> piece_index;
    auto piece_of = [&](int p) {
        int r = m.find(p);
        auto it = piece_index.find(r);
        if (it != piece_index.end()) return it->second;
        int k = static_cast<int>(F.pieces.size());
        piece_index[r] = k;
        F.pieces.push_back({m.pieces_[r].label, 0, SchurCombo::one(m.pieces_[r].label)});
        return k;
    };
    for (int p = 0; p < static_cast<int>(m.pieces_.size()); ++p) {
        int k = piece_of(p);
        F.pieces[k].chi += m.pieces_[p].chi;
        F.pieces[k].decoration = F.pieces[k].decoration * m.pieces_[p].decoration;
    }
    // Chains of segments become arcs.
    const int ns = static_cast<int>(m.segs_.size());
    std::vector<std::pair<int, int>> where(ns, {-1, -1});  // (arc, position)
    std::vector<std::vector<int>> chains;
    std::vector<bool> closed;
    auto walk = [&](int start) {
        std::vector<int> chain;
        int s = start;
        while (true) {
            if (where[s].first >= 0) break;
            where[s] = {static_cast<int>(chains.size()), static_cast<int>(chain.size())};
            chain.push_back(s);
            const SegEnd& h = m.segs_[s].ends[1];
            if (h.kind == SegEnd::Open) throw InvalidMove("unterminated binding front");
            if (h.kind != SegEnd::Join) break;
            if (h.end != 0) throw InvalidMove("binding orientation flips along an arc");
            s = h.seg;
        }
        return chain;
    };
    for (int s = 0; s < ns; ++s) {
        const SegEnd& t = m.segs_[s].ends[0];
        if (t.kind == SegEnd::Open) throw InvalidMove("unterminated binding front");
        if (t.kind == SegEnd::Join || where[s].first >= 0) continue;
        chains.push_back(walk(s));
        closed.push_back(false);
    }
    for (int s = 0; s < ns; ++s) {
        if (where[s].first >= 0) continue;
        chains.push_back(walk(s));
        closed.push_back(true);
    }
    for (std::size_t c = 0; c < chains.size(); ++c) {
        OpenArc a;
        a.kind = closed[c] ? ArcKind::Circle : ArcKind::Interval;
        for (int k = 0; k < 3; ++k) a.sides[k] = piece_of(m.segs_[chains[c][0]].sides[k]);
        for (int s : chains[c])
            for (int k = 0; k < 3; ++k)
                if (piece_of(m.segs_[s].sides[k]) != a.sides[k])
                    throw InvalidMove("facet sides change along a binding arc");
        if (!closed[c]) {
            for (int e = 0; e < 2; ++e) {
                const SegEnd& x = m.segs_[e == 0 ? chains[c].front() : chains[c].back()].ends[e];
                ArcAnchor& an = a.ends[e];
                if (x.kind == SegEnd::Point) {
                    an.kind = ArcAnchor::Point;
                    an.point = x.point;
                } else {
                    an.kind = x.kind == SegEnd::Bottom ? ArcAnchor::Bottom : ArcAnchor::Top;
                    an.key = x.key;
                }
            }
        }
        F.arcs.push_back(a);
    }
    for (const auto& inc : m.points_) {
        SingularPoint p;
        for (int k = 0; k < 4; ++k) {
            auto [s, end] = inc[k];
            p.incident[k] = {where[s].first, end};
        }
        F.points.push_back(p);
    }
    F.bottom = m.bottom_;
    for (const auto& [n, p] : m.bottom_piece_) F.bottom_piece[n] = piece_of(p);
    F.top = m.web();
    for (const auto& [n, e] : m.edges_) F.top_piece[n] = piece_of(e.piece);
    return F;
}

// ---------------------------------------------------------------- gluing

Foam glue(const OpenFoam& F, const OpenFoam& G) {
    if (F.N != G.N) throw BoundaryMismatch("different N");
    if (!F.bottom.same_as(G.bottom)) throw BoundaryMismatch("bottom webs differ");
    if (!F.top.same_as(G.top)) throw BoundaryMismatch("top webs differ");
    const int nF = static_cast<int>(F.pieces.size());
    const int np = nF + static_cast<int>(G.pieces.size());
    auto piece = [&](int k) -> const OpenPiece& { return k < nF ? F.pieces[k] : G.pieces[k - nF]; };
    Dsu facets(np);
    for (const auto& [n, p] : F.bottom_piece) facets.unite(p, nF + G.bottom_piece.at(n));
    for (const auto& [n, p] : F.top_piece) facets.unite(p, nF + G.top_piece.at(n));

    // Seams: each bottom or top edge, extended through side points, is a loop
    // or an interval between web vertices on the glued boundary.
    std::vector<const WebEdge*> seam_edges;
    std::vector<int> seam_piece;
    for (const auto& e : F.bottom.edges) {
        seam_edges.push_back(&e);
        seam_piece.push_back(F.bottom_piece.at(e.name));
    }
    const int nb = static_cast<int>(seam_edges.size());
    for (const auto& e : F.top.edges) {
        seam_edges.push_back(&e);
        seam_piece.push_back(F.top_piece.at(e.name));
    }
    Dsu seams(static_cast<int>(seam_edges.size()));
    std::map<std::string, std::vector<int>> at_side;
    for (int k = 0; k < static_cast<int>(seam_edges.size()); ++k)
        for (const WebEnd* x : {&seam_edges[k]->tail, &seam_edges[k]->head})
            if (x->kind == WebEnd::Side) at_side[x->name].push_back(k);
    for (const auto& [s, ks] : at_side) {
        if (ks.size() != 2 || !((ks[0] < nb) != (ks[1] < nb)))
            throw BoundaryMismatch("side point " + s + " is not on exactly one bottom and one top edge");
        seams.unite(ks[0], ks[1]);
    }
    std::map<int, int> seam_vertex_ends;
    std::set<int> seam_roots;
    for (int k = 0; k < static_cast<int>(seam_edges.size()); ++k) {
        int r = seams.find(k);
        seam_roots.insert(r);
        for (const WebEnd* x : {&seam_edges[k]->tail, &seam_edges[k]->head})
            if (x->kind == WebEnd::Vertex) ++seam_vertex_ends[r];
    }
    std::vector<int> chi(np, 0);
    for (int k = 0; k < np; ++k) chi[facets.find(k)] += piece(k).chi;
    for (int r : seam_roots)
        if (seam_vertex_ends[r] > 0) chi[facets.find(seam_piece[r])] -= 1;

    // Arcs: G is mirrored, so its arcs run backwards.
    const int naF = static_cast<int>(F.arcs.size());
    const int na = naF + static_cast<int>(G.arcs.size());
    auto arc_end = [&](int a, int e) -> const ArcAnchor& {
        return a < naF ? F.arcs[a].ends[e] : G.arcs[a - naF].ends[1 - e];
    };
    auto arc_side = [&](int a, int k) { return a < naF ? F.arcs[a].sides[k] : nF + G.arcs[a - naF].sides[k]; };
    auto arc_closed = [&](int a) {
        return (a < naF ? F.arcs[a].kind : G.arcs[a - naF].kind) == ArcKind::Circle;
    };
    std::map<std::string, std::vector<std::pair<int, int>>> anchors;
    for (int a = 0; a < na; ++a) {
        if (arc_closed(a)) continue;
        for (int e = 0; e < 2; ++e) {
            const ArcAnchor& x = arc_end(a, e);
            if (x.kind == ArcAnchor::Point) continue;
            anchors[(x.kind == ArcAnchor::Bottom ? "B" : "T") + x.key].push_back({a, e});
        }
    }
    std::vector<int> next(na, -1);
    std::vector<bool> has_prev(na, false);
    for (const auto& [k, v] : anchors) {
        if (v.size() != 2 || v[0].second == v[1].second)
            throw BoundaryMismatch("binding arcs do not match at boundary vertex " + k);
        auto [from, to] = v[0].second == 1 ? std::make_pair(v[0].first, v[1].first)
                                           : std::make_pair(v[1].first, v[0].first);
        next[from] = to;
        has_prev[to] = true;
    }
    Foam out;
    out.N = F.N;
    std::map<int, int> facet_index;
    for (int k = 0; k < np; ++k) {
        int r = facets.find(k);
        if (!facet_index.count(r)) {
            facet_index[r] = static_cast<int>(out.facets.size());
            Facet f;
            f.label = piece(r).label;
            f.decoration = SchurCombo::one(f.label);
            out.facets.push_back(f);
        }
        Facet& f = out.facets[facet_index[r]];
        if (piece(k).label != f.label) throw BoundaryMismatch("glued facets have different labels");
        f.decoration = f.decoration * piece(k).decoration;
    }
    std::vector<int> arc_of(na, -1);
    auto emit = [&](int start, bool circle) {
        int idx = static_cast<int>(out.arcs.size());
        BindingArc b;
        b.kind = circle ? ArcKind::Circle : ArcKind::Interval;
        for (int k = 0; k < 3; ++k) b.sides[k] = facet_index.at(facets.find(arc_side(start, k)));
        int a = start, last = start;
        while (a >= 0 && arc_of[a] < 0) {
            arc_of[a] = idx;
            for (int k = 0; k < 3; ++k)
                if (facet_index.at(facets.find(arc_side(a, k))) != b.sides[k])
                    throw BoundaryMismatch("facet sides change along a glued arc");
            last = a;
            a = next[a];
        }
        if (!circle) {
            if (arc_end(start, 0).kind != ArcAnchor::Point || arc_end(last, 1).kind != ArcAnchor::Point)
                throw BoundaryMismatch("glued arc ends on the boundary");
        }
        out.arcs.push_back(b);
        return std::make_pair(start, last);
    };
    std::vector<std::pair<int, int>> first_last;
    for (int a = 0; a < na; ++a) {
        if (arc_closed(a) || has_prev[a]) continue;
        first_last.push_back(emit(a, false));
    }
    for (int a = 0; a < na; ++a) {
        if (arc_of[a] >= 0) continue;
        if (!arc_closed(a) && !has_prev[a]) continue;
        first_last.push_back(emit(a, true));
    }
    // Points: F's, then G's with arc ends reversed.
    const int npF = static_cast<int>(F.points.size());
    auto point_id = [&](int a, int e) {
        const ArcAnchor& x = arc_end(a, e);
        return a < naF ? x.point : npF + x.point;
    };
    for (int k = 0; k < npF + static_cast<int>(G.points.size()); ++k) {
        const SingularPoint& src = k < npF ? F.points[k] : G.points[k - npF];
        SingularPoint p;
        for (int j = 0; j < 4; ++j) {
            int a = k < npF ? src.incident[j].arc : naF + src.incident[j].arc;
            int e = k < npF ? src.incident[j].end : 1 - src.incident[j].end;
            p.incident[j] = {arc_of[a], e};
        }
        out.points.push_back(p);
    }
    for (std::size_t i = 0; i < out.arcs.size(); ++i) {
        BindingArc& b = out.arcs[i];
        if (b.kind == ArcKind::Circle) continue;
        b.ends[0] = point_id(first_last[i].first, 0);
        b.ends[1] = point_id(first_last[i].second, 1);
    }
    auto rep = validate_structure(out);
    if (!rep.ok()) throw InvalidFoam("glued foam: " + rep.to_string());
    auto traced = trace_boundaries(out);
    for (const auto& [r, idx] : facet_index) {
        Facet& f = out.facets[idx];
        f.boundary = traced[idx];
        int twice_genus = 2 - chi[r] - static_cast<int>(f.boundary.size());
        if (twice_genus < 0 || twice_genus % 2) throw InvalidFoam("glued facet has impossible Euler characteristic");
        f.genus = twice_genus / 2;
    }
    return out;
}

Foam close_movie(const OpenFoam& F) {
    OpenFoam empty;
    empty.N = F.N;
    return glue(F, empty);
}

}  // namespace foam
