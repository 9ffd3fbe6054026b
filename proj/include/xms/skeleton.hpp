// Closed 3-manifold machinery: generalized triangulations given by face
// gluing tables, an exact first-homology validator, combinatorial skeletons
// (regions, labeled-edge branch data, vertex link graphs), the skeleton of a
// triangulation's 2-skeleton, and the two hand-built skeletons used by the
// worked examples (lens spaces and S^1 x S^2).
#ifndef XMS_SKELETON_HPP
#define XMS_SKELETON_HPP

#include "xms/xigraph.hpp"

#include <array>

namespace xms {

struct FaceGluing {
    int tet = -1;                 // target tetrahedron (-1 = unglued)
    int face = -1;                // target face
    std::array<int, 4> perm{};    // corner map, perm[c] = corner in the target
};

struct Triangulation {
    int n_tets = 0;
    std::vector<std::array<FaceGluing, 4>> glue; // [tet][face]

    std::vector<std::string> validate() const; // closed, involutive, orientable
    // orientation signs per tetrahedron (+1/-1); computed by validate and
    // cached by callers through orient()
    std::vector<int> orient() const; // throws if not orientable/closed
};

// finitely generated abelian group presented by torsion coefficients + rank
struct AbelianGroup {
    std::vector<long> torsion; // nontrivial invariant factors, ascending
    long rank = 0;
    bool operator==(const AbelianGroup&) const = default;
    std::string to_string() const;
};

AbelianGroup homology_h1(const Triangulation& t);

// Smith normal form diagonal of an integer matrix (invariant factors incl. 1s)
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m);

// ------------------------------------------------------------ built-ins

Triangulation s3_triangulation();                 // two tetrahedra, doubled
Triangulation s3_pentachoron();                   // boundary of the 4-simplex
Triangulation lens_triangulation(int p, int q);   // bipyramid, p tetrahedra
Triangulation s1xs2_triangulation();              // product triangulation
// by name: "s3", "rp3", "l31"/"lens-tri:p,q", "s1xs2"
Triangulation builtin_triangulation(const std::string& name);

// ------------------------------------------------------------- skeletons

struct CombSkeleton {
    int n_balls = 0;

    struct Region {
        int euler = 1;
        int ball_neg = 0, ball_pos = 0; // r_-, r_+
    };
    std::vector<Region> regions;

    struct Edge {
        // data for the chosen positive orientation
        std::vector<int> branch_region; // cyclic branch list
        std::vector<int> branch_eps;    // +1/-1 per branch
        std::vector<int> gap_ball;      // ball of the gap before branch i
        int valence() const { return static_cast<int>(branch_region.size()); }
    };
    std::vector<Edge> edges;

    struct LinkDartRef {
        int p_edge = 0;
        bool away_positive = true; // orientation of the edge pointing away
        int ball_index = 0;        // gap index in that orientation's numbering
    };
    struct Vertex {
        PlanarXiGraph link;                  // combinatorics; labels per labeling
        std::vector<int> link_edge_region;   // per link edge
        std::vector<LinkDartRef> dart_ref;   // per link dart
    };
    std::vector<Vertex> vertices;

    std::vector<std::string> validate() const;
};

// Branch data of an oriented edge: positive = stored, negative = reversed
// cyclic order, negated signs, gaps renumbered so that gap 0 stays anchored.
struct OrientedEdgeView {
    std::vector<int> region, eps, gap_ball;
};
OrientedEdgeView edge_view(const CombSkeleton& p, int edge, bool positive);

CombSkeleton skeleton_from_triangulation(const Triangulation& t);
// One vertex, one edge of valence p, one disk region, one ball.
CombSkeleton lens_skeleton(int p, int q);
// One vertex, one edge of valence 4, two disks and one annulus, two balls.
CombSkeleton s1xs2_skeleton();

} // namespace xms

#endif
