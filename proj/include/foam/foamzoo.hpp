/**
 * @file foamzoo.hpp
 * @brief Named closed foams, local relations as open foam templates, and the
 *        closures that turn a relation into identities between evaluations.
 *
 * A relation is a pair of linear combinations of open foams with the same
 * boundary web, each term given as a movie script run from that web. Both
 * sides are compared by gluing every term to the mirror image of a closure
 * foam with the same boundary.
 */
#ifndef FOAM_FOAMZOO_HPP
#define FOAM_FOAMZOO_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "foam/foameval.hpp"
#include "foam/moyflag.hpp"
#include "foam/movie.hpp"

namespace foam {

/// One a-labeled sphere facet.
Foam build_sphere(int a, const SchurCombo& dec, int N);
/// Disks labeled a, b, a+b on one circle binding, stored in that order.
Foam build_theta(int a, int b, const SchurCombo& dec_a, const SchurCombo& dec_b, const SchurCombo& dec_ab, int N);
/// G x S^1: an annulus (or torus) per edge and a circle binding per vertex.
/// Missing decorations mean 1.
Foam build_graph_times_circle(const MoyGraph& G, const std::vector<SchurCombo>& edge_decs = {});

/// Closed foam on the generalized theta web: strand disks a_1..a_k, partial
/// sum facets s_i = a_1+..+a_i (s_1 is the a_1 disk, s_k an N-disk) and
/// circle bindings (s_{i-1}, a_i, s_i).
struct GenThetaDecorations {
    std::vector<std::vector<SchurCombo>> layers;  // layers[l][i] multiplies onto strand i
    std::vector<SchurCombo> partial;              // partial[i] onto s_{i+1}; may be shorter
};
Foam build_gen_theta_closed(const std::vector<int>& a, const GenThetaDecorations& decs);

struct OpenTerm {
    MultiPoly coeff;
    std::string name;
    std::function<void(Movie&)> script;
};

struct Relation {
    std::string id;
    std::vector<int> params;
    int N = 0;
    Web boundary;
    std::vector<OpenTerm> lhs, rhs;
    /// The rhs terms, coefficients included, are pairwise orthogonal idempotents.
    bool idempotents = false;

    OpenFoam open(const OpenTerm& t) const;
    /// `first`, then `second` on top of it.
    OpenFoam compose(const OpenTerm& first, const OpenTerm& second) const;
};

/// Ids: sphere, theta, neck-cutting, dot-migration, digon, digon-dur, joint,
/// square, mp. Throws BadParameters outside the label constraints.
Relation build_relation(const std::string& id, const std::vector<int>& params, int N);
std::vector<std::string> relation_ids();
/// Smallest nondegenerate parameters for `id` at N, empty if there are none.
std::vector<int> default_params(const std::string& id, int N);

/// Glues every term to the mirror image of `closure`.
std::pair<FoamLinComb, FoamLinComb> close_relation(const Relation& R, const OpenFoam& closure);
/// Every term of R as a closure, plain and with one facet multiplied by a
/// Schur polynomial of degree at most D (two per box).
std::vector<OpenFoam> closure_family(const Relation& R, int D);

struct RelationReport {
    int closures = 0;
    int failures = 0;
    int idempotent_checks = 0;
    int idempotent_failures = 0;
    std::vector<std::string> messages;
    bool ok() const { return failures == 0 && idempotent_failures == 0; }
};
/// lhs = rhs under every closure, plus the orthogonal idempotent test when it applies.
RelationReport verify_relation(const Relation& R, int D, int jobs = 1);

/// Movie from the empty web with seeded random moves; closed by gluing to a
/// redecorated copy of itself.
Foam random_zoo_foam(std::uint64_t seed, int N, int steps = 8);

struct ZooEntry {
    std::string name;
    Foam foam;
};
/// The fixed zoo at N: spheres, thetas, tori, products, generalized thetas,
/// closed relation terms and seeded random foams.
std::vector<ZooEntry> zoo(int N, int random_count = 6);

}  // namespace foam

#endif
