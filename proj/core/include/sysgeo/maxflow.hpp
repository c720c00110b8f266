// Dinic max-flow with real-valued capacities, used for minimum-weight
// cocycle extraction. Arcs are stored paired with their reverses; undirected
// edges are two mutually-reverse arcs of equal capacity. After run(), the
// canonical minimum cut is the residual-reachable source side.
#pragma once

#include <cstddef>
#include <vector>

namespace sysgeo {

class MaxFlow {
public:
    explicit MaxFlow(int node_count);

    // Returns the index of the u->v arc; its reverse is index+1.
    int add_arc(double cap_uv, int u, int v, double cap_vu);
    int add_undirected(int u, int v, double cap);

    double run(int s, int t);

    // Source side of the canonical min cut (run() must have been called).
    std::vector<char> min_cut_side() const;

    int node_count() const { return static_cast<int>(head_.size()); }
    double arc_residual(int arc) const { return arcs_[arc].cap; }

private:
    struct Arc {
        int to;
        int next;  // next arc out of the same tail, -1 terminates
        double cap;
    };

    bool bfs_levels(int s, int t);
    double dfs_push(int u, int t, double limit);

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
    int source_ = -1, sink_ = -1;
    double tol_ = 0.0;  // saturation threshold, scaled from max capacity
};

} // namespace sysgeo
