/**
 * @file foamcore.hpp
 * @brief Combinatorial model of closed decorated foams: facets, binding arcs,
 *        singular points, colorings and the surfaces they cut out.
 *
 * Facets, arcs and points are referred to by their index in the owning Foam.
 * A binding arc stores its three sides as (thin, thin, thick); the storage
 * order is also the cyclic order of the facets around the arc.
 */
#ifndef FOAM_FOAMCORE_HPP
#define FOAM_FOAMCORE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foam/schur.hpp"

namespace foam {

constexpr int kMaxPigments = 30;
using PigmentSet = std::uint32_t;

inline int pigment_count(PigmentSet s) { return __builtin_popcount(s); }
inline bool has_pigment(PigmentSet s, int i) { return (s >> i) & 1u; }
/// Increasing list of (0-based) pigments in s; doubles as the VarSet of its variables.
VarSet pigments_of(PigmentSet s);

/// One side of a binding arc: arc index and slot 0, 1 (thin) or 2 (thick).
struct SideRef {
    int arc = -1;
    int slot = -1;
    bool operator==(const SideRef& o) const { return arc == o.arc && slot == o.slot; }
    bool operator<(const SideRef& o) const { return arc != o.arc ? arc < o.arc : slot < o.slot; }
};

struct Facet {
    int label = 0;
    int genus = 0;
    std::vector<std::vector<SideRef>> boundary;  // cyclic lists, one per boundary circle
    SchurCombo decoration;                       // arity == label

    int euler() const { return 2 - 2 * genus - static_cast<int>(boundary.size()); }
};

enum class ArcKind { Circle, Interval };

struct BindingArc {
    ArcKind kind = ArcKind::Circle;
    std::array<int, 3> sides{-1, -1, -1};  // facet indices (thin, thin, thick), in cyclic order
    std::array<int, 2> ends{-1, -1};       // (tail, head) singular points for intervals
};

/// end 0 is the tail of the arc, end 1 its head.
struct ArcEnd {
    int arc = -1;
    int end = -1;
    bool operator==(const ArcEnd& o) const { return arc == o.arc && end == o.end; }
};

struct SingularPoint {
    std::array<ArcEnd, 4> incident;
};

struct Foam {
    int N = 0;
    std::vector<Facet> facets;
    std::vector<BindingArc> arcs;
    std::vector<SingularPoint> points;
};

/// Roles of the four arcs at a singular point in the tetrahedral model:
/// role 0 has type (a,b), role 1 (b,c), role 2 (a+b,c), role 3 (a,b+c).
struct PointRoles {
    std::array<int, 4> incident_of_role{};  // index into SingularPoint::incident
    std::array<bool, 4> thin_swapped{};     // role's first thin label sits in slot 1
    int a = 0, b = 0, c = 0;
};

/// The germ pairing at a point: each pair lists two sides that bound the same facet sector.
struct GermPair {
    SideRef first, second;
    int facet = -1;
};

/// First role assignment matching labels, facet germs and planar cyclic orders.
std::optional<PointRoles> derive_point_roles(const Foam& F, int point);
std::array<GermPair, 6> germ_pairs(const Foam& F, int point, const PointRoles& roles);

/// Boundary circles traced through arcs and germ pairings, grouped by facet.
/// Circles start at their smallest SideRef. Throws InvalidFoam on broken gluing.
std::vector<std::vector<std::vector<SideRef>>> trace_boundaries(const Foam& F);

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};
/// Everything except the declared facet boundaries.
ValidationReport validate_structure(const Foam& F);
ValidationReport validate_foam(const Foam& F);
/// Throws InvalidFoam with the full report when validation fails.
void require_valid(const Foam& F);

/// d_N(F); decoration degrees counted with variables of degree 2. Uses the
/// largest diagram of each decoration, so it is exact for homogeneous ones.
int foam_degree(const Foam& F);
bool decorations_homogeneous(const Foam& F);

using Coloring = std::vector<PigmentSet>;

/// Every coloring exactly once, in a deterministic order. The callback may
/// return false to stop early.
void for_each_coloring(const Foam& F, const std::function<bool(const Coloring&)>& fn);
std::vector<Coloring> enumerate_colorings(const Foam& F);
bool satisfies_flow(const Foam& F, const Coloring& c);

/// Euler characteristic of the closure of a set of facets.
int euler_of_facets(const Foam& F, const std::vector<char>& in_set);

/// Pigments are 0-based here; printed pigment i is index i-1.
int monochrome_euler(const Foam& F, const Coloring& c, int i);
int intersection_euler(const Foam& F, const Coloring& c, int i, int j);
int bichrome_euler(const Foam& F, const Coloring& c, int i, int j);

struct ThetaCounts {
    int positive = 0;
    int negative = 0;
};
/// Circles of F_i ∩ F_j ∩ F_ij for i < j.
ThetaCounts theta_counts(const Foam& F, const Coloring& c, int i, int j);

struct KempeComponent {
    std::vector<int> facets;
    int euler = 0;
};
std::vector<KempeComponent> kempe_components(const Foam& F, const Coloring& c, int i, int j);
Coloring apply_kempe(const Foam& F, const Coloring& c, int i, int j, int component);

/// Removes 0-labeled facets, merging the facets and arcs they separated.
Foam strip_zero_facets(const Foam& F);

/// Disjoint union (N must agree).
Foam disjoint_union(const Foam& F, const Foam& G);

}  // namespace foam

#endif
