// Z2 (co)homology on the cell graph.
//
// H^1(T^n, Z2) = Z2^n; a class is a bitmask over axes. An edge pairs oddly
// with a class when it crosses an odd number of the class's seams, so the
// pairing of a class with a loop is the parity of popcount(mask & winding).
// These wrap parities are intrinsic: they survive restriction to a
// hypersurface complex, which is what lets class vectors ride down the
// induction unchanged.
#pragma once

#include "sysgeo/cell_graph.hpp"

#include <cstdint>
#include <vector>

namespace sysgeo {

using ClassMask = std::uint32_t;

bool edge_pairs_odd(const GraphEdge& e, ClassMask alpha);

// Closed loop: edges[i] joins nodes[i] to nodes[(i+1) % size].
struct Cycle1 {
    std::vector<int> nodes;
    std::vector<int> edges;
    double length = 0.0;
    std::uint32_t winding = 0;  // XOR of edge wrap masks
};

// Builds and validates a cycle from an edge walk starting at start_node.
// Throws std::invalid_argument when the walk is not a closed loop.
Cycle1 cycle_from_edges(const CellGraph& g, int start_node, const std::vector<int>& edge_ids);

bool pairs_odd(ClassMask alpha, const Cycle1& cycle);

// Shortest loop pairing oddly with alpha, found as a shortest sheet-swapping
// path in the orientation double cover. Length is +infinity when no loop
// pairs oddly (alpha evaluates to zero on every edge).
struct OddCycleResult {
    double length = 0.0;
    Cycle1 loop;
    bool exists = false;
};

OddCycleResult shortest_odd_cycle(const CellGraph& g, ClassMask alpha);
double class_length(const CellGraph& g, ClassMask alpha);

// Shortest loop with any nonzero Z2 winding vector, via the 2^n-sheeted
// wrap-parity cover.
struct SystoleResult {
    double length = 0.0;
    Cycle1 loop;
    bool exists = false;
};

SystoleResult graph_systole(const CellGraph& g);

// Cup product of one-classes on the torus is nonzero exactly when the class
// vectors are linearly independent over Z2.
bool cup_product_nonzero(const std::vector<ClassMask>& classes, int n);
int z2_rank(const std::vector<ClassMask>& classes);

// Factors a loop lying in B(p, t) through the basepoint p = df.source:
// gamma is cut into segments of length <= eps, each closed up through
// shortest paths to p, so every factor has length <= 2t + eps and the
// factors XOR to gamma exactly as Z2 chains. Requires eps >= twice the
// longest graph edge and gamma contained in B(p, t).
std::vector<Cycle1> curve_factor(const CellGraph& g, const DistanceField& df,
                                 const Cycle1& gamma, double t, double eps);

} // namespace sysgeo
