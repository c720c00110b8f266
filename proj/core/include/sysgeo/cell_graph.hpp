// Metric graph of a weighted cubical complex.
//
// Nodes are k-dimensional faces of a cubical torus, addressed by doubled
// integer coordinates rho in prod Z_{2*m_i}: a face spans exactly the axes
// where rho is odd. The ambient complex (k = n) has cells as nodes; the
// intrinsic complex of a hypersurface reuses the same structure one
// dimension down, so the induction can recurse without special cases.
//
// Each edge joins two faces sharing a codimension-one face ("via"), carries
// the metric length between face centers, the (k-1)-volume of the shared
// face (the cut capacity), and a bitmask recording which coordinate seams
// the step crosses. Crossing parities against seams realize H^1(T^n, Z2):
// summing an edge set's wrap bits over a closed loop gives the loop's
// winding parity per axis.
#pragma once

#include "sysgeo/mesh.hpp"

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sysgeo {

struct GraphNode {
    std::uint64_t key = 0;  // mixed-radix packed doubled coordinates
    double phi = 1.0;       // conformal factor averaged over containing cells
    double volume = 0.0;    // k-volume of the face
};

struct GraphEdge {
    int u = -1, v = -1;
    double length = 0.0;      // metric distance between the two face centers
    double area = 0.0;        // (k-1)-volume of the shared face
    std::uint32_t wrap = 0;   // per-axis seam crossing parity
    std::uint64_t via = 0;    // packed coordinates of the shared face
};

struct CellGraph {
    int n = 0;    // ambient axes
    int dim = 0;  // dimension of the faces serving as nodes
    std::vector<int> dims;
    std::vector<double> spacing;
    std::shared_ptr<const CubicalTorus> source;

    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge id)
    std::unordered_map<std::uint64_t, int> index_of_key;

    std::uint64_t pack(const std::vector<int>& rho) const;
    std::vector<int> unpack(std::uint64_t key) const;
    int node_at(std::uint64_t key) const;  // -1 when absent

    double total_volume() const;
    double max_edge_length() const;
    double edge_set_area(const std::vector<int>& edge_ids) const;
    void build_adjacency();
};

CellGraph ambient_graph(const CubicalTorus& mesh);
CellGraph ambient_graph(std::shared_ptr<const CubicalTorus> mesh);

// Intrinsic complex of a hypersurface given as a set of edge ids of g: the
// cut faces become nodes, adjacent when they share a face of one dimension
// lower. Multiple cut edges sharing one via face collapse to one node.
CellGraph intrinsic_graph(const CellGraph& g, const std::vector<int>& surface_edges);

struct DistanceField {
    int source = -1;
    std::vector<double> dist;
    std::vector<int> parent_edge;  // edge used to reach the node, -1 at source
};

DistanceField distance_field(const CellGraph& g, int source);

struct Ball {
    int center = -1;
    double radius = 0.0;
    std::vector<int> nodes;
    double volume = 0.0;
};

struct Sphere {
    int center = -1;
    double t = 0.0;
    std::vector<int> edges;  // edges with exactly one endpoint at distance <= t
    double area = 0.0;
};

Ball metric_ball(const CellGraph& g, const DistanceField& df, double R);
Sphere metric_sphere(const CellGraph& g, const DistanceField& df, double t);

// Edges with both endpoints inside the ball of radius R.
std::vector<int> edges_inside_ball(const CellGraph& g, const DistanceField& df, double R);

struct CoareaSelection {
    double t = 0.0;
    double sphere_area = 0.0;
    std::vector<int> sphere_edges;
    double ball_volume = 0.0;  // |B(p, R)|
    double bound = 0.0;        // |B(p, R)| / ((1-beta) R), the continuum coarea bound
    bool within_bound = false;
    int levels_considered = 0;
};

// Scans the finitely many distinct distance levels strictly inside
// (beta*R, R) and returns the one whose sphere has minimum area, preferring
// larger t on ties. Throws VerificationError when no level lies inside.
CoareaSelection coarea_select_t(const CellGraph& g, const DistanceField& df, double R, double beta);
CoareaSelection coarea_select_t(const CellGraph& g, int p, double R, double beta);

} // namespace sysgeo
