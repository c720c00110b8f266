#include "sysgeo/minsurf.hpp"
#include "sysgeo/errors.hpp"
#include "sysgeo/maxflow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace sysgeo {

namespace {

constexpr int kBruteLimit = 27;  // exhaustive coboundary search bound

std::vector<int> component_labels(const CellGraph& g, int& count) {
    std::vector<int> label(g.nodes.size(), -1);
    count = 0;
    std::vector<int> stack;
    for (int root = 0; root < static_cast<int>(g.nodes.size()); ++root) {
        if (label[root] >= 0)
            continue;
        label[root] = count;
        stack.push_back(root);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, e] : g.adj[u]) {
                if (label[v] < 0) {
                    label[v] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return label;
}

// 2-colors one component so that endpoints differ exactly across flip-edges.
// Returns false when the component carries an odd cycle.
bool two_color_component(const CellGraph& g, int root, const std::vector<char>& flip,
                         std::vector<signed char>& color) {
    std::vector<int> stack{root};
    color[root] = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, e] : g.adj[u]) {
            signed char want = color[u] ^ flip[e];
            if (color[v] < 0) {
                color[v] = want;
                stack.push_back(v);
            } else if (color[v] != want) {
                return false;
            }
        }
    }
    return true;
}

struct CutCandidate {
    double value = std::numeric_limits<double>::infinity();
    std::vector<int> edges;
};

// Signed crossings of each edge with the fixed reference walls of alpha: for
// every axis in alpha the wall sits between doubled coordinates 0 and 1, and
// an edge scores +1/-1 per axis whose wall its short arc passes. Summing the
// deltas around a closed walk gives that walk's total winding, whose parity
// is exactly its pairing with alpha.
std::vector<int> winding_deltas(const CellGraph& g, const std::vector<int>& comp_edges,
                                ClassMask alpha) {
    std::vector<int> delta(comp_edges.size(), 0);
    for (std::size_t i = 0; i < comp_edges.size(); ++i) {
        const GraphEdge& ed = g.edges[comp_edges[i]];
        const std::vector<int> cu = g.unpack(g.nodes[ed.u].key);
        const std::vector<int> cv = g.unpack(g.nodes[ed.v].key);
        const std::vector<int> cw = g.unpack(ed.via);
        for (int a = 0; a < g.n; ++a) {
            if (((alpha >> a) & 1u) == 0)
                continue;
            int pu = cu[a], pv = cv[a];
            if (pu == pv) {
                if (cw[a] != pu)
                    delta[i] += 1;  // period-2 axis: the wrap edge is the wall passage
            } else if (pu % 2 == 1 && pv % 2 == 1) {
                if (cw[a] == 0)
                    delta[i] += pv == 1 ? 1 : -1;  // parallel step through the wall
            } else if ((pu | pv) == 1) {
                delta[i] += pu == 0 ? 1 : -1;  // sideways step across it
            }
        }
    }
    return delta;
}

struct StripCut {
    double flow = 0.0;
    std::vector<int> edges;  // projected representative, ascending
};

// Minimum over monotone representatives via the truncated cyclic cover:
// unroll the winding direction of alpha into K strips, merge everything
// below strip 0 into a source and everything above strip K-1 into a sink,
// and take one min s-t cut. Any such cut projects (odd copy multiplicity per
// base edge) to a representative, because summing side flips over all lifts
// of a closed walk telescopes to the walk's total winding. Conversely each
// wall or staircase representative embeds as an s-t cut of the truncation at
// matching cost, so the result is the exact minimum over representatives
// crossing each parallel cell line once. Representatives that backtrack can
// be cheaper; min_hypersurface certifies or falls back accordingly.
StripCut strip_cut(const CellGraph& g, const std::vector<int>& comp_nodes,
                   const std::vector<int>& comp_edges, ClassMask alpha) {
    const std::vector<int> delta = winding_deltas(g, comp_edges, alpha);
    const int strips = std::max(4, std::popcount(alpha) + 2);
    const int span = std::popcount(alpha) + 1;  // |delta| is at most popcount(alpha)

    std::vector<int> local(g.nodes.size(), -1);
    for (int i = 0; i < static_cast<int>(comp_nodes.size()); ++i)
        local[comp_nodes[i]] = i;
    auto node_id = [&](int node, int level) {
        if (level < 0)
            return 0;  // source: all strips below the truncation
        if (level >= strips)
            return 1;  // sink: all strips above
        return 2 + local[node] * strips + level;
    };

    struct Copy {
        int orig, nu, nv;
    };
    std::vector<Copy> copies;
    MaxFlow flow(2 + static_cast<int>(comp_nodes.size()) * strips);
    for (std::size_t i = 0; i < comp_edges.size(); ++i) {
        int e = comp_edges[i];
        for (int k = -span; k < strips + span; ++k) {
            int nu = node_id(g.edges[e].u, k);
            int nv = node_id(g.edges[e].v, k + delta[i]);
            if (nu == nv)
                continue;  // both ends merged into the same terminal
            copies.push_back({e, nu, nv});
            flow.add_undirected(nu, nv, g.edges[e].area);
        }
    }

    StripCut out;
    out.flow = flow.run(0, 1);
    std::vector<char> side = flow.min_cut_side();
    std::vector<char> in_z(g.edges.size(), 0);
    for (const Copy& c : copies)
        if (side[c.nu] != side[c.nv])
            in_z[c.orig] ^= 1;
    for (int e : comp_edges)
        if (in_z[e])
            out.edges.push_back(e);
    return out;
}

// Certified lower bound along one axis of alpha: the parallel cell lines are
// node-disjoint loops pairing odd with alpha, so every representative spends
// at least the cheapest edge of each line. Tight on flat meshes, where the
// minimum is a coordinate wall.
double packing_axis(const CellGraph& g, const std::vector<int>& comp_edges, int a) {
    std::map<std::vector<int>, double> line_min;
    for (int e : comp_edges) {
        const GraphEdge& ed = g.edges[e];
        std::vector<int> cu = g.unpack(g.nodes[ed.u].key);
        const std::vector<int> cv = g.unpack(g.nodes[ed.v].key);
        if (cu[a] % 2 == 0 || cv[a] % 2 == 0)
            continue;  // an endpoint does not span axis a
        if (cu[a] == cv[a] && g.unpack(ed.via)[a] == cu[a])
            continue;  // no motion along axis a
        cu[a] = 0;
        auto [it, fresh] = line_min.try_emplace(cu, ed.area);
        if (!fresh)
            it->second = std::min(it->second, ed.area);
    }
    double total = 0.0;
    for (const auto& [key, cheapest] : line_min)
        total += cheapest;
    return total;
}

struct DualEdge {
    int u = -1, v = -1;
    double weight = 0.0;     // area of the crossed facet
    std::uint32_t wrap = 0;  // seam-crossing parity of the dual step
    int primal = -1;
};

// Grid-vertex graph of an ambient two-torus: one vertex per all-even rho,
// one edge per facet, joining the facet's two endpoint vertices.
struct DualGrid {
    std::vector<std::uint64_t> keys;
    std::vector<DualEdge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (vertex, edge)
};

DualGrid build_dual_grid(const CellGraph& g) {
    DualGrid d;
    std::unordered_map<std::uint64_t, int> index;
    auto vertex_id = [&](const std::vector<int>& rho) {
        std::uint64_t key = g.pack(rho);
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(d.keys.size()));
        if (fresh)
            d.keys.push_back(key);
        return it->second;
    };
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        std::vector<int> via = g.unpack(g.edges[e].via);
        const int b = (via[0] & 1) ? 0 : 1;  // the axis the facet spans
        const int period = 2 * g.dims[b];
        std::vector<int> lo = via, hi = via;
        lo[b] = via[b] - 1;
        hi[b] = (via[b] + 1) % period;
        DualEdge de;
        de.u = vertex_id(lo);
        de.v = vertex_id(hi);
        de.weight = g.edges[e].area;
        de.wrap = via[b] + 1 == period ? (1u << b) : 0u;
        de.primal = e;
        d.edges.push_back(de);
    }
    d.adj.assign(d.keys.size(), {});
    for (int i = 0; i < static_cast<int>(d.edges.size()); ++i) {
        d.adj[d.edges[i].u].push_back({d.edges[i].v, i});
        d.adj[d.edges[i].v].push_back({d.edges[i].u, i});
    }
    return d;
}

struct CoverRun {
    std::vector<double> dist;  // indexed by 4*vertex + winding-parity sheet
    std::vector<int> parent_edge;
    std::vector<int> parent_node;
};

CoverRun cover_dijkstra(const DualGrid& d, int src) {
    CoverRun r;
    r.dist.assign(4 * d.adj.size(), std::numeric_limits<double>::infinity());
    r.parent_edge.assign(r.dist.size(), -1);
    r.parent_node.assign(r.dist.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    r.dist[4 * src] = 0.0;
    heap.push({0.0, 4 * src});
    while (!heap.empty()) {
        auto [dd, cu] = heap.top();
        heap.pop();
        if (dd > r.dist[cu])
            continue;
        int vu = cu >> 2, sheet = cu & 3;
        for (auto [vv, de] : d.adj[vu]) {
            int cv = 4 * vv + (sheet ^ static_cast<int>(d.edges[de].wrap));
            double nd = dd + d.edges[de].weight;
            if (nd < r.dist[cv]) {
                r.dist[cv] = nd;
                r.parent_edge[cv] = de;
                r.parent_node[cv] = cu;
                heap.push({nd, cv});
            }
        }
    }
    return r;
}

// Exact minimum on an ambient two-torus, arbitrary weights. A cocycle in
// class alpha is precisely an even-degree edge set of the dual grid whose
// winding parity is alpha with the two axis bits swapped: coboundaries have
// even degree around every grid vertex and the seam reference winds once
// across the class's axes. Splitting such a set into simple dual cycles and
// cancelling equal-class pairs leaves either one cycle in the swapped class
// or two covering the other nonzero classes, so the minimum equals
// min(w[s], w[b1] + w[b2]) over shortest closed dual walks per winding
// class. Each walk is a Dijkstra run in the four-sheet wrap-parity cover,
// rooted where the class's lowest crossed seam forces the cycle to pass;
// the walk's odd-multiplicity edge set then attains the same class at no
// greater cost, which squeezes the candidate against the decomposition
// bound and makes both exact.
CutCandidate dual_walk_cut(const CellGraph& g, ClassMask alpha) {
    const DualGrid d = build_dual_grid(g);
    double walk[4] = {0.0, std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
    int root[4] = {-1, -1, -1, -1};
    for (int vi = 0; vi < static_cast<int>(d.adj.size()); ++vi) {
        const std::vector<int> rho = g.unpack(d.keys[vi]);
        const bool seam0 = rho[0] == 0, seam1 = rho[1] == 0;
        if (!seam0 && !seam1)
            continue;
        const CoverRun run = cover_dijkstra(d, vi);
        auto consider = [&](int cls) {
            double c = run.dist[4 * vi + cls];
            if (c < walk[cls]) {
                walk[cls] = c;
                root[cls] = vi;
            }
        };
        if (seam0) {
            consider(1);
            consider(3);
        }
        if (seam1)
            consider(2);
    }

    const int swapped = static_cast<int>(((alpha & 1u) << 1) | ((alpha >> 1) & 1u));
    int other[2], k = 0;
    for (int cls : {1, 2, 3})
        if (cls != swapped)
            other[k++] = cls;

    std::vector<char> use(g.edges.size(), 0);
    auto xor_walk = [&](int cls) {
        if (root[cls] < 0)
            throw std::logic_error("min_hypersurface: dual winding class unreachable");
        const CoverRun run = cover_dijkstra(d, root[cls]);
        for (int cur = 4 * root[cls] + cls; run.parent_edge[cur] >= 0; cur = run.parent_node[cur])
            use[d.edges[run.parent_edge[cur]].primal] ^= 1;
    };
    if (walk[swapped] <= walk[other[0]] + walk[other[1]]) {
        xor_walk(swapped);
    } else {
        xor_walk(other[0]);
        xor_walk(other[1]);
    }

    CutCandidate out;
    out.value = 0.0;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (use[e]) {
            out.edges.push_back(e);
            out.value += g.edges[e].area;
        }
    }
    return out;
}

CutCandidate brute_component(const CellGraph& g, const std::vector<int>& comp_nodes,
                             const std::vector<int>& comp_edges, const std::vector<char>& odd) {
    const int k = static_cast<int>(comp_nodes.size());
    if (k > kBruteLimit)
        throw VerificationError("min_hypersurface: component too large for exhaustive search");

    std::vector<int> local(g.nodes.size(), -1);
    for (int i = 0; i < k; ++i)
        local[comp_nodes[i]] = i;

    // Node 0's side is pinned: a cut and its complement are the same surface.
    // Incidence in CSR form and a signed-delta array keep the Gray-code walk
    // branchless: flipping a node adds each incident edge's current delta and
    // negates it. Deltas are dyadic, so the running area stays exact.
    std::vector<int> head(k + 1, 0);
    double area = 0.0;
    for (std::size_t le = 0; le < comp_edges.size(); ++le) {
        const GraphEdge& edge = g.edges[comp_edges[le]];
        if (odd[comp_edges[le]])
            area += edge.area;
        for (int end : {local[edge.u], local[edge.v]})
            if (end != 0)
                ++head[end + 1];
    }
    for (int i = 0; i < k; ++i)
        head[i + 1] += head[i];
    std::vector<int> slot(head[k]);
    std::vector<int> fill(head.begin(), head.end() - 1);
    for (std::size_t le = 0; le < comp_edges.size(); ++le) {
        const GraphEdge& edge = g.edges[comp_edges[le]];
        for (int end : {local[edge.u], local[edge.v]})
            if (end != 0)
                slot[fill[end]++] = static_cast<int>(le);
    }
    std::vector<double> delta(comp_edges.size());
    for (std::size_t le = 0; le < comp_edges.size(); ++le) {
        double a = g.edges[comp_edges[le]].area;
        delta[le] = odd[comp_edges[le]] ? -a : a;
    }

    double best = area;
    std::uint64_t best_mask = 0;
    const std::uint64_t states = 1ull << (k - 1);
    for (std::uint64_t c = 1; c < states; ++c) {
        int node = std::countr_zero(c) + 1;  // Gray-code neighbor flip
        for (int i = head[node]; i < head[node + 1]; ++i) {
            int le = slot[i];
            area += delta[le];
            delta[le] = -delta[le];
        }
        if (area < best) {
            best = area;
            best_mask = c ^ (c >> 1);
        }
    }

    CutCandidate result;
    result.value = 0.0;
    for (std::size_t le = 0; le < comp_edges.size(); ++le) {
        const GraphEdge& edge = g.edges[comp_edges[le]];
        int su = local[edge.u] == 0 ? 0 : static_cast<int>((best_mask >> (local[edge.u] - 1)) & 1);
        int sv = local[edge.v] == 0 ? 0 : static_cast<int>((best_mask >> (local[edge.v] - 1)) & 1);
        if ((odd[comp_edges[le]] ^ su ^ sv) != 0) {
            result.edges.push_back(comp_edges[le]);
            result.value += edge.area;
        }
    }
    std::sort(result.edges.begin(), result.edges.end());
    return result;
}

std::vector<char> odd_flags(const CellGraph& g, ClassMask alpha) {
    std::vector<char> odd(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        odd[e] = edge_pairs_odd(g.edges[e], alpha) ? 1 : 0;
    return odd;
}

} // namespace

bool is_cocycle_in_class(const CellGraph& g, const std::vector<int>& edges, ClassMask alpha) {
    std::vector<char> flip = odd_flags(g, alpha);
    for (int e : edges)
        flip.at(e) ^= 1;  // difference from the reference must be a coboundary
    std::vector<signed char> color(g.nodes.size(), -1);
    for (int root = 0; root < static_cast<int>(g.nodes.size()); ++root)
        if (color[root] < 0 && !two_color_component(g, root, flip, color))
            return false;
    return true;
}

MinSurfaceResult min_hypersurface(const CellGraph& g, ClassMask alpha) {
    if (g.n < 32 && (alpha >> g.n) != 0)
        throw std::invalid_argument("min_hypersurface: class has bits beyond the ambient axes");

    const std::vector<char> odd = odd_flags(g, alpha);
    int comp_count = 0;
    const std::vector<int> label = component_labels(g, comp_count);
    std::vector<std::vector<int>> comp_nodes(comp_count), comp_edges(comp_count);
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
        comp_nodes[label[i]].push_back(i);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        comp_edges[label[g.edges[e].u]].push_back(e);

    MinSurfaceResult result;
    std::vector<signed char> color(g.nodes.size(), -1);
    int cut_components = 0, oracle_components = 0;
    auto take = [&result](const std::vector<int>& edges) {
        result.surface.edges.insert(result.surface.edges.end(), edges.begin(), edges.end());
    };

    for (int c = 0; c < comp_count; ++c) {
        if (two_color_component(g, comp_nodes[c][0], odd, color))
            continue;  // class restricts to zero here: empty representative

        double pack_min = std::numeric_limits<double>::infinity();
        double pack_max = 0.0;
        for (int a = 0; a < g.n; ++a) {
            if (((alpha >> a) & 1u) == 0)
                continue;
            double pa = packing_axis(g, comp_edges[c], a);
            pack_min = std::min(pack_min, pa);
            pack_max = std::max(pack_max, pa);
        }
        result.lower_bound += pack_max;

        if (g.n == 2 && g.dim == 2) {  // ambient two-torus: exact for any weights
            take(dual_walk_cut(g, alpha).edges);
            ++cut_components;
            continue;
        }

        StripCut cut = strip_cut(g, comp_nodes[c], comp_edges[c], alpha);
        double cheapest = std::numeric_limits<double>::infinity();
        for (int e : comp_edges[c])
            cheapest = std::min(cheapest, g.edges[e].area);
        // The staircase minimum is certified exact when it meets the packing
        // bound, or, on ambient complexes, when a representative crossing
        // some cell line three times cannot afford the two extra facets.
        bool certified = cut.flow <= pack_max ||
                         (g.dim == g.n && cut.flow <= pack_min + 2.0 * cheapest);
        if (!certified && static_cast<int>(comp_nodes[c].size()) <= kBruteLimit) {
            take(brute_component(g, comp_nodes[c], comp_edges[c], odd).edges);
            ++oracle_components;
            continue;
        }
        take(cut.edges);
        ++cut_components;
    }

    std::sort(result.surface.edges.begin(), result.surface.edges.end());
    result.surface.area = g.edge_set_area(result.surface.edges);
    result.surface.dual_class = alpha;
    if (oracle_components == 0)
        result.method = "flow";
    else if (cut_components == 0)
        result.method = "oracle";
    else
        result.method = "mixed";
    if (!is_cocycle_in_class(g, result.surface.edges, alpha))
        throw std::logic_error("min_hypersurface: produced edge set fails the cocycle check");
    return result;
}

Hypersurface brute_force_min_hypersurface(const CellGraph& g, ClassMask alpha) {
    if (g.n < 32 && (alpha >> g.n) != 0)
        throw std::invalid_argument("brute_force: class has bits beyond the ambient axes");
    const std::vector<char> odd = odd_flags(g, alpha);
    int comp_count = 0;
    const std::vector<int> label = component_labels(g, comp_count);
    std::vector<std::vector<int>> comp_nodes(comp_count), comp_edges(comp_count);
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
        comp_nodes[label[i]].push_back(i);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        comp_edges[label[g.edges[e].u]].push_back(e);

    Hypersurface z;
    z.dual_class = alpha;
    std::vector<signed char> color(g.nodes.size(), -1);
    for (int c = 0; c < comp_count; ++c) {
        if (two_color_component(g, comp_nodes[c][0], odd, color))
            continue;
        CutCandidate cand = brute_component(g, comp_nodes[c], comp_edges[c], odd);
        z.edges.insert(z.edges.end(), cand.edges.begin(), cand.edges.end());
    }
    std::sort(z.edges.begin(), z.edges.end());
    z.area = g.edge_set_area(z.edges);
    return z;
}

SwapOutcome swap_construction(const CellGraph& g, const Hypersurface& z,
                              const DistanceField& df, double t) {
    SwapOutcome out;
    out.record.t = t;
    out.record.area_before = z.area;

    std::vector<char> in_z(g.edges.size(), 0);
    for (int e : z.edges)
        in_z.at(e) = 1;
    std::vector<char> in_ball(g.nodes.size(), 0);
    std::vector<std::pair<double, int>> order;
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
        if (df.dist[i] <= t) {
            in_ball[i] = 1;
            order.push_back({df.dist[i], i});
        }
    }
    std::sort(order.begin(), order.end());

    // Z2-integrate Z-crossings along the shortest-path tree from the center.
    std::vector<char> side(g.nodes.size(), 0);
    for (auto [d, node] : order) {
        if (node == df.source)
            continue;
        int e = df.parent_edge[node];
        int parent = g.edges[e].u == node ? g.edges[e].v : g.edges[e].u;
        side[node] = side[parent] ^ in_z[e];
    }

    auto tree_path = [&](int node) {  // edges from basepoint out to node
        std::vector<int> path;
        int cur = node;
        while (cur != df.source) {
            int e = df.parent_edge[cur];
            path.push_back(e);
            cur = g.edges[e].u == cur ? g.edges[e].v : g.edges[e].u;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!in_ball[g.edges[e].u] || !in_ball[g.edges[e].v])
            continue;
        if ((side[g.edges[e].u] ^ side[g.edges[e].v]) != in_z[e]) {
            // A ball loop crossing Z oddly: the lemma hypothesis fails, and
            // this loop is the certificate of that failure.
            std::vector<int> loop = tree_path(g.edges[e].u);
            loop.push_back(e);
            std::vector<int> back = tree_path(g.edges[e].v);
            loop.insert(loop.end(), back.rbegin(), back.rend());
            out.witness = cycle_from_edges(g, df.source, loop);
            out.ok = false;
            return out;
        }
    }

    std::vector<char> in_d(g.nodes.size(), 0);
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
        in_d[i] = in_ball[i] && side[i];

    out.z_prime.dual_class = z.dual_class;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        bool boundary = in_d[g.edges[e].u] != in_d[g.edges[e].v];
        bool inside = in_ball[g.edges[e].u] && in_ball[g.edges[e].v];
        bool crossing = in_ball[g.edges[e].u] != in_ball[g.edges[e].v];
        if (in_z[e] && inside)
            out.record.z_inside_area += g.edges[e].area;
        if (boundary && crossing) {
            out.record.cap_area += g.edges[e].area;
            if (in_z[e])
                out.record.cap_overlap_area += g.edges[e].area;
        }
        if (in_z[e] != boundary) {
            out.z_prime.edges.push_back(e);
            out.z_prime.area += g.edges[e].area;
        }
    }
    out.record.area_after = out.z_prime.area;
    out.record.cocycle_ok = is_cocycle_in_class(g, out.z_prime.edges, z.dual_class);
    out.ok = true;
    return out;
}

StabilityRecord stability_check(const CellGraph& g, const Hypersurface& z, int p,
                                double R, double beta, double class_len_hint) {
    if (p < 0 || p >= static_cast<int>(g.nodes.size()))
        throw std::out_of_range("stability_check: center out of range");
    if (!(beta > 0.0 && beta < 1.0) || !(R > 0.0))
        throw std::invalid_argument("stability_check: need R > 0 and beta in (0,1)");

    StabilityRecord rec;
    rec.R = R;
    rec.beta = beta;
    rec.class_len =
        std::isnan(class_len_hint) ? class_length(g, z.dual_class) : class_len_hint;
    rec.hypothesis_ok = rec.class_len > 2.0 * R;

    DistanceField df = distance_field(g, p);
    CoareaSelection sel = coarea_select_t(g, df, R, beta);
    rec.t = sel.t;
    rec.sphere_area = sel.sphere_area;
    rec.levels_considered = sel.levels_considered;
    rec.ball_volume = sel.ball_volume;

    // An edge belongs to the small ball when it touches it: the facet at
    // intrinsic distance d has its near cell endpoint within ambient
    // distance d, so this set dominates the intrinsic ball of Z.
    double small = beta * R;
    for (int e : z.edges)
        if (df.dist[g.edges[e].u] <= small || df.dist[g.edges[e].v] <= small)
            rec.z_in_small += g.edges[e].area;

    SwapOutcome swap = swap_construction(g, z, df, rec.t);
    rec.consistent = swap.ok;
    if (!swap.ok) {
        rec.witness = swap.witness;
        return rec;
    }
    rec.swap_area_before = swap.record.area_before;
    rec.swap_area_after = swap.record.area_after;
    rec.swap_not_better = swap.record.area_after >= swap.record.area_before;

    rec.minimality_ok = rec.z_in_small <= rec.sphere_area;
    rec.coarea_within = rec.sphere_area * (1.0 - beta) * R <= rec.ball_volume;
    rec.composite_ok = rec.z_in_small * (1.0 - beta) * R <= rec.ball_volume;
    return rec;
}

StabilityRecord stability_check(const CellGraph& g, const Hypersurface& z, int p,
                                double R, double beta) {
    return stability_check(g, z, p, R, beta, std::numeric_limits<double>::quiet_NaN());
}

} // namespace sysgeo
