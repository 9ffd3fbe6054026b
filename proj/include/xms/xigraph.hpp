// Labeled graphs in the plane and the 2-sphere for a crossed module:
// validity, label derivation, grade via arc systems, 1-sphericality, and
// exact scalar evaluation of colored graphs in pointed categories.
//
// Combinatorics: a graph is stored as oriented edges plus a rotation system.
// Darts are indexed 2*edge (half-edge at `from`) and 2*edge+1 (at `to`);
// rotation[v] lists the darts at v in the cyclic order induced by the
// opposite orientation of the surface (clockwise for the standard plane).
#ifndef XMS_XIGRAPH_HPP
#define XMS_XIGRAPH_HPP

#include "xms/category.hpp"

#include <random>

namespace xms {

struct CyclicXiSet {
    std::vector<Elt> alpha;  // -> H
    std::vector<Elt> beta;   // -> E
    std::vector<int> eps;    // +1 / -1
    std::vector<int> color;  // simples; may be empty when uncolored

    size_t size() const { return alpha.size(); }
    // checks eq-style cyclic conditions and color degrees
    std::vector<std::string> validate(const CrossedModule& cm,
                                      const PointedXiFusion* cat = nullptr) const;
    // fill beta from its value at position `anchor`
    void derive_betas(const CrossedModule& cm, size_t anchor, Elt beta_anchor);
};

struct XiEdge {
    int from = 0, to = 0;
    Elt h = 0;
    int color = -1;
};

struct PlanarXiGraph {
    int n_vertices = 0;
    std::vector<XiEdge> edges;
    std::vector<std::vector<int>> rotation; // darts, clockwise per vertex
    std::vector<int> anchor_pos;            // per vertex: index into rotation[v]
    std::vector<Elt> anchor_e;              // per vertex: E-label of that dart
    bool sphere = false;
    int outer_vertex = 0;                   // outer face: the face at the corner
    int outer_pos = 0;                      //   clockwise-before rotation[outer_vertex][outer_pos]

    int edge_of(int dart) const { return dart / 2; }
    int twin(int dart) const { return dart ^ 1; }
    int vertex_of(int dart) const {
        const XiEdge& e = edges[edge_of(dart)];
        return (dart & 1) ? e.to : e.from;
    }
    int eps_of(int dart) const { return (dart & 1) ? +1 : -1; } // + iff toward vertex
    int dart_count() const { return static_cast<int>(edges.size()) * 2; }

    std::vector<std::string> validate_structure() const; // rotations well-formed
    bool connected() const;
};

// Faces by orbit tracing; face_of[d] is the face on the left of the dart
// directed away from vertex_of(d).
struct FaceData {
    int n_faces = 0;
    std::vector<int> face_of;             // dart -> face
    std::vector<std::vector<int>> orbits; // face -> darts in boundary order
    bool genus_zero = false;              // Euler check (connected graphs)
};
FaceData trace_faces(const PlanarXiGraph& g);

// Half-edge E-labels from the per-vertex anchors; reports the first vertex
// whose cyclic conditions fail.
struct DerivedLabels {
    std::vector<Elt> beta; // per dart
    std::vector<std::string> report;
    bool ok() const { return report.empty(); }
};
DerivedLabels derive_labels(const PlanarXiGraph& g, const CrossedModule& cm);

// The cyclic set seen at a vertex, starting from rotation position `start`.
CyclicXiSet vertex_cyclic_set(const PlanarXiGraph& g, const DerivedLabels& lab, int v,
                              int start);

// Arc systems for the grade: per-vertex crossing words plus landing corner,
// and the visiting order around the basepoint.
struct ArcSystem {
    struct Arc {
        std::vector<std::pair<int, int>> crossings; // (edge, +1/-1)
        int landing_pos = 0;                        // rotation index at the vertex
    };
    std::vector<Arc> arcs;        // per vertex
    std::vector<int> visit_order; // vertices in clockwise order around m
};

// Canonical arc system: contour of a deterministic spanning tree of the face
// graph rooted in the outer face. With an RNG, tree and landing corners and
// the basepoint position are randomized (still realizable by construction).
ArcSystem canonical_arcs(const PlanarXiGraph& g, const FaceData& faces,
                         std::mt19937* rng = nullptr);

Elt grade(const PlanarXiGraph& g, const CrossedModule& cm, const DerivedLabels& lab,
          const ArcSystem& arcs);
// grade with internally generated arcs; multiplies over components
Elt grade_canonical(const PlanarXiGraph& g, const CrossedModule& cm);
// sphere graphs: grade of a planar push-off is trivial
bool is_one_spherical(const PlanarXiGraph& g, const CrossedModule& cm);

// ---------------------------------------------------------------- evaluation

struct MorseEvent {
    enum Kind { Box, Cup, Cap } kind = Box;
    int pos = 0;
    Word word;          // Box: emitted letters; Cup: the two letters
    Elt e = 0;          // Box: E-degree of the basis vector
    Scalar coef = Scalar::one(); // Box: coefficient on the canonical basis
};

struct EvalResult {
    bool zero = false;
    Scalar value = Scalar::one();
    Elt degree = 0; // E-degree of the resulting endomorphism of the unit
};

// Evaluate a closed Morse word in a basic pointed category (not a
// push-forward). Returns zero when some multiplicity space has rank 0.
EvalResult evaluate_morse(const std::vector<MorseEvent>& events, const PointedXiFusion& cat);

// Scalar of the cyclic rotation p_{from,to} on the rank-1 multiplicity space
// of a colored cyclic set (indices are positions in the cyclic order).
// Returns nullopt when the space has rank 0.
std::optional<Scalar> cyclic_rotate_scalar(const CyclicXiSet& s, const PointedXiFusion& cat,
                                           size_t from, size_t to);

// Coefficient of the contraction vector on canonical basis (x) canonical
// basis at anchor position s: the inverse of the pairing value. nullopt on
// rank 0.
std::optional<Scalar> edge_pairing_scalar(const CyclicXiSet& s, const PointedXiFusion& cat,
                                          size_t anchor);
// The pairing value itself (for tests).
std::optional<Scalar> pairing_value(const CyclicXiSet& s, const PointedXiFusion& cat,
                                    size_t anchor, bool dual_left = true);

// Sweep decomposition of a connected planar graph: boxes in contour order of
// a spanning tree, then caps. root_dart must lie on the outer face (-1 picks
// the smallest such dart); rng randomizes the tree for sweep-independence
// tests.
std::vector<MorseEvent> planar_to_morse(const PlanarXiGraph& g, const FaceData& faces,
                                        const DerivedLabels& lab, const PointedXiFusion& cat,
                                        int root_dart = -1, std::mt19937* rng = nullptr);

// inv of a colored graph on canonical basis vectors. For sphere graphs the
// graph must be 1-spherical. Components are evaluated separately and
// multiplied.
EvalResult evaluate_colored(const PlanarXiGraph& g, const PointedXiFusion& cat,
                            int root_dart = -1, std::mt19937* rng = nullptr,
                            bool check_sphere = true);

} // namespace xms

#endif
