#include "sysgeo/homology.hpp"
#include "sysgeo/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sysgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra workspace over a sheeted cover, version-stamped so repeated runs
// skip reinitialization.
struct CoverSearch {
    std::vector<double> dist;
    std::vector<int> pred;
    std::vector<int> stamp;
    int round = 0;

    void reset(std::size_t size) {
        if (dist.size() != size) {
            dist.assign(size, kInf);
            pred.assign(size, -1);
            stamp.assign(size, 0);
            round = 0;
        }
        ++round;
    }
    bool fresh(std::size_t i) const { return stamp[i] == round; }
    void touch(std::size_t i, double d, int p) {
        stamp[i] = round;
        dist[i] = d;
        pred[i] = p;
    }
};

std::vector<int> sources_from_edges(const CellGraph& g, const std::vector<int>& edge_ids) {
    std::vector<int> src;
    for (int e : edge_ids) {
        src.push_back(g.edges[e].u);
        src.push_back(g.edges[e].v);
    }
    std::sort(src.begin(), src.end());
    src.erase(std::unique(src.begin(), src.end()), src.end());
    return src;
}

// Walks predecessor edges from cover node `at` back to the source, returning
// edges in forward (source -> at) order.
std::vector<int> unwind(const CellGraph& g, const std::vector<int>& pred,
                        const std::vector<std::uint32_t>& sheet_flip,
                        long at, int node_count) {
    std::vector<int> edges;
    while (pred[at] >= 0) {
        int e = pred[at];
        int node = static_cast<int>(at % node_count);
        std::uint32_t sheet = static_cast<std::uint32_t>(at / node_count);
        int prev_node = (g.edges[e].u == node) ? g.edges[e].v : g.edges[e].u;
        std::uint32_t prev_sheet = sheet ^ sheet_flip[e];
        edges.push_back(e);
        at = static_cast<long>(prev_sheet) * node_count + prev_node;
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

} // namespace

bool edge_pairs_odd(const GraphEdge& e, ClassMask alpha) {
    return std::popcount(e.wrap & alpha) & 1;
}

Cycle1 cycle_from_edges(const CellGraph& g, int start_node, const std::vector<int>& edge_ids) {
    if (edge_ids.empty())
        throw std::invalid_argument("cycle: empty edge list");
    Cycle1 c;
    int cur = start_node;
    for (int e : edge_ids) {
        const GraphEdge& edge = g.edges.at(e);
        int next;
        if (edge.u == cur)
            next = edge.v;
        else if (edge.v == cur)
            next = edge.u;
        else
            throw std::invalid_argument("cycle: edge walk is disconnected");
        c.nodes.push_back(cur);
        c.edges.push_back(e);
        c.length += edge.length;
        c.winding ^= edge.wrap;
        cur = next;
    }
    if (cur != start_node)
        throw std::invalid_argument("cycle: edge walk does not close up");
    return c;
}

bool pairs_odd(ClassMask alpha, const Cycle1& cycle) {
    return std::popcount(alpha & cycle.winding) & 1;
}

OddCycleResult shortest_odd_cycle(const CellGraph& g, ClassMask alpha) {
    OddCycleResult result;
    result.length = kInf;

    std::vector<int> odd_edges;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (edge_pairs_odd(g.edges[e], alpha))
            odd_edges.push_back(e);
    if (odd_edges.empty())
        return result;  // alpha vanishes on every loop of this graph

    std::vector<std::uint32_t> flip(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        flip[e] = edge_pairs_odd(g.edges[e], alpha) ? 1u : 0u;

    const int V = static_cast<int>(g.nodes.size());
    const std::vector<int> sources = sources_from_edges(g, odd_edges);

    CoverSearch ws;
    std::vector<int> best_pred;
    int best_src = -1;

    using Item = std::pair<double, long>;  // (dist, sheet*V + node)
    for (int src : sources) {
        ws.reset(static_cast<std::size_t>(2) * V);
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        ws.touch(src, 0.0, -1);
        heap.push({0.0, src});
        const long target = static_cast<long>(V) + src;  // (src, sheet 1)
        std::vector<char> done(static_cast<std::size_t>(2) * V, 0);
        while (!heap.empty()) {
            auto [d, at] = heap.top();
            heap.pop();
            if (d >= result.length)
                break;  // cannot beat the incumbent
            if (done[at])
                continue;
            done[at] = 1;
            if (at == target) {
                result.length = d;
                result.exists = true;
                best_pred = ws.pred;
                best_src = src;
                break;
            }
            int node = static_cast<int>(at % V);
            std::uint32_t sheet = static_cast<std::uint32_t>(at / V);
            for (auto [nbr, e] : g.adj[node]) {
                long to = static_cast<long>(sheet ^ flip[e]) * V + nbr;
                double nd = d + g.edges[e].length;
                if (nd >= result.length)
                    continue;
                if (!ws.fresh(to) || nd < ws.dist[to]) {
                    ws.touch(to, nd, e);
                    heap.push({nd, to});
                }
            }
        }
    }

    if (result.exists) {
        std::vector<int> loop_edges =
            unwind(g, best_pred, flip, static_cast<long>(V) + best_src, V);
        result.loop = cycle_from_edges(g, best_src, loop_edges);
    }
    return result;
}

double class_length(const CellGraph& g, ClassMask alpha) {
    return shortest_odd_cycle(g, alpha).length;
}

SystoleResult graph_systole(const CellGraph& g) {
    if (g.n > 12)
        throw std::invalid_argument("graph_systole: too many axes for the parity cover");
    SystoleResult result;
    result.length = kInf;

    std::vector<int> seam_edges;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.edges[e].wrap != 0)
            seam_edges.push_back(e);
    if (seam_edges.empty())
        return result;

    std::vector<std::uint32_t> flip(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        flip[e] = g.edges[e].wrap;

    const int V = static_cast<int>(g.nodes.size());
    const long sheets = 1L << g.n;
    const std::vector<int> sources = sources_from_edges(g, seam_edges);

    CoverSearch ws;
    std::vector<int> best_pred;
    long best_at = -1;
    int best_src = -1;

    using Item = std::pair<double, long>;
    for (int src : sources) {
        ws.reset(static_cast<std::size_t>(sheets) * V);
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        ws.touch(src, 0.0, -1);
        heap.push({0.0, src});
        std::vector<char> done(static_cast<std::size_t>(sheets) * V, 0);
        while (!heap.empty()) {
            auto [d, at] = heap.top();
            heap.pop();
            if (d >= result.length)
                break;
            if (done[at])
                continue;
            done[at] = 1;
            int node = static_cast<int>(at % V);
            std::uint32_t sheet = static_cast<std::uint32_t>(at / V);
            if (node == src && sheet != 0) {
                result.length = d;
                result.exists = true;
                best_pred = ws.pred;
                best_at = at;
                best_src = src;
                break;
            }
            for (auto [nbr, e] : g.adj[node]) {
                long to = static_cast<long>(sheet ^ flip[e]) * V + nbr;
                double nd = d + g.edges[e].length;
                if (nd >= result.length)
                    continue;
                if (!ws.fresh(to) || nd < ws.dist[to]) {
                    ws.touch(to, nd, e);
                    heap.push({nd, to});
                }
            }
        }
    }

    if (result.exists) {
        std::vector<int> loop_edges = unwind(g, best_pred, flip, best_at, V);
        result.loop = cycle_from_edges(g, best_src, loop_edges);
    }
    return result;
}

int z2_rank(const std::vector<ClassMask>& classes) {
    std::vector<ClassMask> basis(32, 0);
    int rank = 0;
    for (ClassMask v : classes) {
        while (v != 0) {
            int h = 31 - std::countl_zero(v);
            if (basis[h] == 0) {
                basis[h] = v;
                ++rank;
                break;
            }
            v ^= basis[h];
        }
    }
    return rank;
}

bool cup_product_nonzero(const std::vector<ClassMask>& classes, int n) {
    for (ClassMask c : classes)
        if (n < 32 && (c >> n) != 0)
            throw std::invalid_argument("cup_product: class has bits beyond the ambient axes");
    return z2_rank(classes) == static_cast<int>(classes.size());
}

std::vector<Cycle1> curve_factor(const CellGraph& g, const DistanceField& df,
                                 const Cycle1& gamma, double t, double eps) {
    if (gamma.edges.empty())
        throw std::invalid_argument("curve_factor: empty loop");
    if (eps < 2.0 * g.max_edge_length())
        throw std::invalid_argument("curve_factor: eps must be at least twice the longest edge");
    for (int node : gamma.nodes)
        if (!(df.dist[node] <= t))
            throw std::invalid_argument("curve_factor: loop leaves the ball of radius t");

    // Edges from the basepoint out to `node`, following the shortest-path tree.
    auto path_from_base = [&](int node) {
        std::vector<int> edges;
        int cur = node;
        while (cur != df.source) {
            int e = df.parent_edge[cur];
            if (e < 0)
                throw std::invalid_argument("curve_factor: loop node unreachable from basepoint");
            edges.push_back(e);
            cur = (g.edges[e].u == cur) ? g.edges[e].v : g.edges[e].u;
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
    };

    // Greedy segmentation: each segment is as long as possible within eps;
    // an edge longer than eps stands alone.
    const int E = static_cast<int>(gamma.edges.size());
    std::vector<std::pair<int, int>> segments;  // [start, end)
    int i = 0;
    while (i < E) {
        int j = i;
        double len = 0.0;
        while (j < E) {
            double l = g.edges[gamma.edges[j]].length;
            if (j > i && len + l > eps)
                break;
            len += l;
            ++j;
        }
        segments.push_back({i, j});
        i = j;
    }

    std::vector<Cycle1> factors;
    factors.reserve(segments.size());
    for (auto [s, t] : segments) {
        int a = gamma.nodes[s];
        int b = gamma.nodes[t % E];
        std::vector<int> out = path_from_base(a);
        std::vector<int> back = path_from_base(b);
        std::vector<int> loop = out;
        loop.insert(loop.end(), gamma.edges.begin() + s, gamma.edges.begin() + t);
        loop.insert(loop.end(), back.rbegin(), back.rend());
        factors.push_back(cycle_from_edges(g, df.source, loop));
    }
    return factors;
}

} // namespace sysgeo
