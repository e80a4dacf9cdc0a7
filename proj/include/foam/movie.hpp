/**
 * @file movie.hpp
 * @brief Open foams built as movies of planar webs, and gluing of two open
 *        foams with the same boundary into a closed one.
 *
 * A movie lives in D x [0,1] for a disk D. Each time slice is a web whose
 * edges may end on named side points of ∂D; side points are fixed in time.
 * Edges are addressed by name. A vertex records which thin edge is on the
 * left when the web is drawn with the flow pointing up; this is the only
 * planar information the builder keeps and it fixes the cyclic order
 * (left, right, thick) stored on every binding.
 *
 * Local frames: births put a south vertex and a north vertex on either side
 * of the birth point. A zip pinches two edges that face each other (left and
 * right in the frame); a digon birth cuts one edge running south to north and
 * inserts two inner edges.
 */
#ifndef FOAM_MOVIE_HPP
#define FOAM_MOVIE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "foam/foamcore.hpp"

namespace foam {

/// Edge endpoint. Side points are written "@name" in edge specs; "" marks a circle.
struct WebEnd {
    enum Kind { None, Vertex, Side } kind = None;
    std::string name;
};

struct WebEdge {
    std::string name;
    int label = 0;
    WebEnd tail, head;
    bool is_circle() const { return tail.kind == WebEnd::None; }
};

struct WebVertex {
    std::string name;
    std::string left, right, thick;  // edge names
};

struct Web {
    std::vector<WebEdge> edges;
    std::vector<WebVertex> vertices;

    /// tail/head: a vertex name, "@side", or "" (both empty for a circle).
    Web& edge(const std::string& name, int label, const std::string& tail = "", const std::string& head = "");
    Web& vertex(const std::string& name, const std::string& left, const std::string& right,
                const std::string& thick);
    const WebEdge* find_edge(const std::string& name) const;
    /// Vertex-name-independent description (vertices keyed by kind and incident edge names); used for matching.
    std::map<std::string, std::string> canonical() const;
    bool same_as(const Web& o) const { return canonical() == o.canonical(); }
};

struct OpenPiece {
    int label = 0;
    int chi = 0;  // Euler characteristic of the piece closure
    SchurCombo decoration;
};

/// Where an arc of an open foam ends: a singular point or a vertex of the bottom/top web.
struct ArcAnchor {
    enum Kind { Point, Bottom, Top } kind = Point;
    int point = -1;
    std::string key;  // canonical vertex key for Bottom/Top
};

struct OpenArc {
    ArcKind kind = ArcKind::Interval;
    std::array<int, 3> sides{-1, -1, -1};  // piece indices, (left, right, thick)
    std::array<ArcAnchor, 2> ends;         // tail, head
};

struct OpenFoam {
    int N = 0;
    std::vector<OpenPiece> pieces;
    std::vector<OpenArc> arcs;
    std::vector<SingularPoint> points;  // incident refers to arcs
    Web bottom, top;
    std::map<std::string, int> bottom_piece, top_piece;  // edge name -> piece
};

class Movie {
public:
    explicit Movie(int N, const Web& bottom = Web{});

    void cup(const std::string& name, int label);
    void cap(const std::string& edge);
    /// Reconnects two antiparallel edges of equal label facing each other.
    void saddle(const std::string& e1, const std::string& e2);

    struct Zip {
        std::string left, right;
        bool left_north = true, right_north = true;
        std::string inner;
        std::string left_new, right_new;  // head-side pieces of the cut edges
    };
    void zip(const Zip& z);

    struct Digon {
        std::string outer;  // runs south to north in the frame
        int left_label = 0;
        bool left_north = true;
        int right_label = 0;
        bool right_north = true;
        std::string left, right;
        std::string outer_new;  // head-side piece of the cut edge
    };
    void digon(const Digon& d);

    /// Binding maximum: removes the two vertices joined by `edge`. With one
    /// shared edge the four outer edges reconnect in pairs; with two the outer
    /// edges join. A reconnected edge keeps the name of its incoming part.
    /// `partner` picks the second digon edge when the two vertices share three.
    void death(const std::string& edge, const std::string& partner = "");

    /// Singular point: contracts `edge` and re-expands along the other planar
    /// pairing of the four outer edges; the new inner edge is `new_edge`.
    void singular(const std::string& edge, const std::string& new_edge);

    void rename(const std::string& from, const std::string& to);
    void decorate(const std::string& edge, const SchurCombo& d);

    Web web() const;
    bool has_edge(const std::string& name) const { return edges_.count(name) != 0; }
    int label(const std::string& edge) const;
    /// Vertex pairs that `death` would accept, as shared-edge names.
    std::vector<std::string> death_candidates() const;
    /// Inner edges that `singular` would accept.
    std::vector<std::string> singular_candidates() const;
    std::vector<std::string> edge_names() const;

    /// Side of an edge: the face to the left when walking along (forward) or against it.
    struct Dart {
        std::string edge;
        bool forward = true;
    };
    /// Face boundaries of each connected component of the current web (no side points).
    std::vector<std::vector<Dart>> faces() const;
    /// Connected component of an edge, numbered by first appearance in name order.
    std::map<std::string, int> components() const;

    OpenFoam finish() const;

private:
    struct End {
        WebEnd::Kind kind = WebEnd::None;
        int vertex = -1;
        std::string side;
    };
    struct EdgeSt {
        int label = 0;
        End tail, head;
        int piece = -1;
        bool is_circle_() const { return tail.kind == WebEnd::None; }
    };
    struct VertSt {
        std::string left, right, thick;
        bool merge = true;
        int seg = -1;
    };
    struct SegEnd {
        enum Kind { Open, Join, Point, Bottom, Top } kind = Open;
        int seg = -1, end = -1;  // for Join
        int point = -1;
        std::string key;
    };
    struct Segment {
        std::array<int, 3> sides{};  // pieces
        std::array<SegEnd, 2> ends;  // tail, head
    };

    int N_;
    std::map<std::string, EdgeSt> edges_;
    std::map<int, VertSt> verts_;
    int next_vertex_ = 0;
    std::vector<OpenPiece> pieces_;
    std::vector<int> parent_;
    std::vector<Segment> segs_;
    std::vector<std::array<std::pair<int, int>, 4>> points_;  // (segment, end)
    Web bottom_;
    std::map<std::string, int> bottom_piece_;

    EdgeSt& edge_at(const std::string& name);
    const EdgeSt& edge_at(const std::string& name) const;
    int find(int p) const;
    void unite(int a, int b);
    int new_piece(int label);
    void slab_and_level(const std::map<std::string, int>& override_chi);
    std::array<std::string, 3> ccw(int v) const;
    int make_vertex(const std::array<std::string, 3>& ccw_names);
    int make_vertex_at(int id, const std::array<std::string, 3>& ccw_names);
    std::pair<std::string, std::string> cut(const std::string& name, bool north, int vs, int vn,
                                            const std::string& new_name);
    std::pair<int, int> ends_of_inner(const std::string& edge) const;
    void replace_at_end(const End& e, const std::string& from, const std::string& to);
    std::string vertex_key(int v) const;
    std::vector<std::string> edges_at(int v) const;
    std::vector<std::string> shared_edges(int v, int w) const;
    void join_pair(int v, int w, bool birth);
    void join_edges(const std::string& a, const std::string& b, int blob_v, int blob_w);
    bool incoming(const std::string& e, int v) const;
};

/// Closed foam from F and the mirror image of G glued along their common boundary.
Foam glue(const OpenFoam& F, const OpenFoam& G);
/// Closed foam of a movie without boundary.
Foam close_movie(const OpenFoam& F);

}  // namespace foam

#endif
