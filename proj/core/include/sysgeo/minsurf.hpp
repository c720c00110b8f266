// Minimum-area Z2-cocycle representatives (discrete minimal hypersurfaces)
// and the stability estimate around them.
//
// Exactness contract for min_hypersurface, per connected component of the
// class's support:
//   - ambient two-tori are exact for arbitrary weights: cocycles correspond
//     to even-degree edge sets of the grid-vertex dual with prescribed
//     winding parity, and cycle decomposition reduces the minimum to
//     shortest parity-constrained closed dual walks;
//   - any component whose truncated-cover cut meets the parallel-loop
//     packing bound is exact, the bound being universal (all flat meshes);
//   - ambient components whose cut is within twice the cheapest facet of
//     every axis's packing bound are exact: a representative crossing some
//     cell line three times cannot afford the two extra facets, and
//     single-crossing representatives all embed into the cover;
//   - otherwise components of at most 27 nodes fall back to exhaustive
//     coboundary enumeration, and larger ones keep the truncated-cover cut,
//     the exact minimum over wall and staircase representatives only.
#pragma once

#include "sysgeo/cell_graph.hpp"
#include "sysgeo/homology.hpp"

#include <string>
#include <vector>

namespace sysgeo {

struct Hypersurface {
    std::vector<int> edges;  // cut edge ids in the host graph, ascending
    double area = 0.0;
    ClassMask dual_class = 0;
};

// Does the edge set cross every loop with the parity prescribed by alpha?
// Checked by 2-coloring the graph against the seam reference cocycle.
bool is_cocycle_in_class(const CellGraph& g, const std::vector<int>& edges, ClassMask alpha);

struct MinSurfaceResult {
    Hypersurface surface;
    double lower_bound = 0.0;  // loop-packing bound, valid for any representative
    std::string method;  // "flow" (cut/dual-walk), "oracle" (enumeration), "mixed"
};

MinSurfaceResult min_hypersurface(const CellGraph& g, ClassMask alpha);

// Exhaustive minimum over (seam reference) XOR (coboundary of every node
// subset), one connected component at a time. Components must have at most
// 27 nodes.
Hypersurface brute_force_min_hypersurface(const CellGraph& g, ClassMask alpha);

// Cap swap: removes Z inside B(p, t) and glues in the sphere portion
// cobounding the odd-side cell region. Exact Z2 bookkeeping; when some ball
// cycle crosses Z oddly the swap is impossible and the offending loop is
// returned as a witness instead.
struct SwapRecord {
    double t = 0.0;
    double area_before = 0.0;
    double area_after = 0.0;
    double z_inside_area = 0.0;     // |Z restricted to edges inside B(p,t)|
    double cap_area = 0.0;          // sphere portion glued in
    double cap_overlap_area = 0.0;  // part of the cap already in Z
    bool cocycle_ok = false;        // Z' represents the same class
};

struct SwapOutcome {
    bool ok = false;
    Hypersurface z_prime;
    SwapRecord record;
    Cycle1 witness;  // odd ball loop when !ok
};

SwapOutcome swap_construction(const CellGraph& g, const Hypersurface& z,
                              const DistanceField& df, double t);

// Stability record: all quantities around one center p at radius R.
// Verdict fields use the multiplication form a*(1-beta)*R <= b so that
// serialized certificates can be re-checked with the identical arithmetic.
struct StabilityRecord {
    double R = 0.0;
    double beta = 0.0;
    double class_len = 0.0;    // L(dual class) on this graph
    bool hypothesis_ok = false;  // L > 2R (reported, not asserted)

    double t = 0.0;            // selected sphere level
    double sphere_area = 0.0;  // |S(p, t)|
    int levels_considered = 0;
    double z_in_small = 0.0;   // |Z edges touching B(p, beta R)|
    double ball_volume = 0.0;  // |B(p, R)|

    bool consistent = false;     // no odd ball loop; witness below otherwise
    Cycle1 witness;
    double swap_area_before = 0.0;
    double swap_area_after = 0.0;
    bool swap_not_better = false;  // area(Z') >= area(Z): minimality in action

    bool minimality_ok = false;  // z_in_small <= sphere_area
    bool coarea_within = false;  // sphere_area*(1-beta)*R <= ball_volume
    bool composite_ok = false;   // z_in_small*(1-beta)*R <= ball_volume
};

// class_len_hint avoids recomputing L(alpha) when the caller already knows
// it (pass NaN to have it computed here).
StabilityRecord stability_check(const CellGraph& g, const Hypersurface& z, int p,
                                double R, double beta, double class_len_hint);
StabilityRecord stability_check(const CellGraph& g, const Hypersurface& z, int p,
                                double R, double beta);

} // namespace sysgeo
