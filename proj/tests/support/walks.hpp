// Random closed walks confined to a metric ball, used by the curve-factor
// tests: a fundamental cycle of a randomized spanning tree of the
// ball-induced subgraph. Tree paths may overlap near the root; the overlap
// cancels in the Z2 chain, which the factoring has to reproduce exactly.
#pragma once

#include "sysgeo/cell_graph.hpp"
#include "sysgeo/homology.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace walks {

inline sysgeo::Cycle1 random_ball_walk(const sysgeo::CellGraph& g,
                                       const sysgeo::DistanceField& df, double t,
                                       std::mt19937& rng) {
    std::vector<int> inside;
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v)
        if (df.dist[v] <= t) inside.push_back(v);
    int root = inside[std::uniform_int_distribution<int>(
        0, static_cast<int>(inside.size()) - 1)(rng)];

    std::vector<int> parent(g.nodes.size(), -1);
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<int> frontier{root};
    seen[root] = 1;
    while (!frontier.empty()) {
        int at = frontier[std::uniform_int_distribution<int>(
            0, static_cast<int>(frontier.size()) - 1)(rng)];
        std::vector<std::pair<int, int>> fresh;
        for (auto [nb, eid] : g.adj[at])
            if (df.dist[nb] <= t && !seen[nb]) fresh.push_back({nb, eid});
        if (fresh.empty()) {
            std::erase(frontier, at);
            continue;
        }
        auto [nb, eid] = fresh[std::uniform_int_distribution<int>(
            0, static_cast<int>(fresh.size()) - 1)(rng)];
        seen[nb] = 1;
        parent[nb] = eid;
        frontier.push_back(nb);
    }

    auto tree_path = [&](int v) {  // root -> v edge sequence
        std::vector<int> edges;
        while (v != root) {
            int eid = parent[v];
            edges.push_back(eid);
            v = g.edges[eid].u == v ? g.edges[eid].v : g.edges[eid].u;
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
    };

    // A chord (in-ball non-tree edge between tree nodes) closes the cycle.
    std::vector<int> chords;
    for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid) {
        const auto& e = g.edges[eid];
        if (!seen[e.u] || !seen[e.v]) continue;
        if (parent[e.u] == eid || parent[e.v] == eid) continue;
        chords.push_back(eid);
    }
    int chord = chords[std::uniform_int_distribution<int>(
        0, static_cast<int>(chords.size()) - 1)(rng)];

    std::vector<int> walk = tree_path(g.edges[chord].u);
    walk.push_back(chord);
    auto back = tree_path(g.edges[chord].v);
    std::reverse(back.begin(), back.end());
    walk.insert(walk.end(), back.begin(), back.end());
    return sysgeo::cycle_from_edges(g, root, walk);
}

} // namespace walks
