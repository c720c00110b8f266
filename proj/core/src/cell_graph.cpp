#include "sysgeo/cell_graph.hpp"
#include "sysgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sysgeo {

namespace {

int face_dim(const std::vector<int>& rho) {
    int k = 0;
    for (int q : rho) k += q & 1;
    return k;
}

// Mean conformal factor over the 2^(n-k) cells containing the face.
double face_phi(const CubicalTorus& mesh, const std::vector<int>& rho) {
    std::vector<int> even_axes;
    std::vector<int> x(mesh.n, 0);
    for (int i = 0; i < mesh.n; ++i) {
        if (rho[i] & 1)
            x[i] = (rho[i] - 1) / 2;
        else
            even_axes.push_back(i);
    }
    const int combos = 1 << even_axes.size();
    double sum = 0.0;
    for (int mask = 0; mask < combos; ++mask) {
        for (std::size_t j = 0; j < even_axes.size(); ++j) {
            int a = even_axes[j];
            int wall = rho[a] / 2;  // cells wall-1 and wall meet at this wall
            int cell = ((mask >> j) & 1) ? wall : wall - 1;
            x[a] = ((cell % mesh.dims[a]) + mesh.dims[a]) % mesh.dims[a];
        }
        sum += mesh.weights[mesh.cell_index(x)];
    }
    return sum / combos;
}

double face_volume(const CubicalTorus& mesh, const std::vector<int>& rho, double phi) {
    double vol = 1.0;
    int k = 0;
    for (int i = 0; i < mesh.n; ++i) {
        if (rho[i] & 1) {
            vol *= mesh.spacing[i];
            ++k;
        }
    }
    for (int j = 0; j < k; ++j)
        vol *= phi;
    return vol;
}

struct Step {
    std::vector<int> rho;
    bool crossed = false;  // did the unit move pass the axis seam at 0
};

Step unit_step(const std::vector<int>& rho, int axis, int sgn, int period) {
    Step s{rho, false};
    int q = rho[axis];
    if (sgn > 0) {
        s.crossed = q + 1 >= period;
        s.rho[axis] = (q + 1) % period;
    } else {
        s.crossed = q - 1 < 0;
        s.rho[axis] = (q - 1 + period) % period;
    }
    return s;
}

// Shared builder: nodes from face keys, edges between faces sharing a
// codimension-one face. Works for the ambient cell graph (dim = n, parallel
// moves only) and for intrinsic complexes of any dimension.
CellGraph build_graph(std::shared_ptr<const CubicalTorus> mesh,
                      std::vector<std::uint64_t> keys, int dim) {
    CellGraph g;
    g.source = mesh;
    g.n = mesh->n;
    g.dim = dim;
    g.dims = mesh->dims;
    g.spacing = mesh->spacing;
    if (g.n > 31)
        throw std::invalid_argument("cell_graph: at most 31 axes supported");
    long double states = 1.0L;
    for (int m : g.dims)
        states *= 2.0L * m;
    if (states > 9.0e18L)
        throw std::invalid_argument("cell_graph: mesh too large to address");

    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    g.nodes.reserve(keys.size());
    for (std::uint64_t key : keys) {
        std::vector<int> rho = g.unpack(key);
        if (face_dim(rho) != dim)
            throw std::invalid_argument("cell_graph: face dimension mismatch");
        GraphNode node;
        node.key = key;
        node.phi = face_phi(*mesh, rho);
        node.volume = face_volume(*mesh, rho, node.phi);
        g.index_of_key.emplace(key, static_cast<int>(g.nodes.size()));
        g.nodes.push_back(node);
    }

    // Emit each undirected edge once, from the endpoint with the smaller key.
    auto try_emit = [&](int fi, const std::vector<int>& rho_s, const std::vector<int>& rho_g,
                        int axis_f, int axis_g, std::uint32_t wrap) {
        std::uint64_t kg = g.pack(rho_g);
        if (g.nodes[fi].key >= kg)
            return;
        auto it = g.index_of_key.find(kg);
        if (it == g.index_of_key.end())
            return;
        int gi = it->second;
        GraphEdge e;
        e.u = fi;
        e.v = gi;
        e.length = g.nodes[fi].phi * g.spacing[axis_f] * 0.5 +
                   g.nodes[gi].phi * g.spacing[axis_g] * 0.5;
        double phi_s = face_phi(*mesh, rho_s);
        e.area = face_volume(*mesh, rho_s, phi_s);
        e.wrap = wrap;
        e.via = g.pack(rho_s);
        g.edges.push_back(e);
    };

    for (int fi = 0; fi < static_cast<int>(g.nodes.size()); ++fi) {
        std::vector<int> rho = g.unpack(g.nodes[fi].key);
        for (int u = 0; u < g.n; ++u) {
            if (!(rho[u] & 1))
                continue;
            int period_u = 2 * g.dims[u];
            for (int sgn : {+1, -1}) {
                // parallel neighbor: slide along spanned axis u
                Step s1 = unit_step(rho, u, sgn, period_u);
                Step s2 = unit_step(s1.rho, u, sgn, period_u);
                std::uint32_t wrap = (s1.crossed != s2.crossed) ? (1u << u) : 0u;
                try_emit(fi, s1.rho, s2.rho, u, u, wrap);
            }
            // perpendicular neighbors: turn from axis u into an unspanned axis v
            for (int v = 0; v < g.n; ++v) {
                if (rho[v] & 1)
                    continue;
                int period_v = 2 * g.dims[v];
                for (int sgn_u : {+1, -1}) {
                    Step s1 = unit_step(rho, u, sgn_u, period_u);
                    for (int sgn_v : {+1, -1}) {
                        Step s2 = unit_step(s1.rho, v, sgn_v, period_v);
                        std::uint32_t wrap = (s1.crossed ? (1u << u) : 0u) |
                                             (s2.crossed ? (1u << v) : 0u);
                        try_emit(fi, s1.rho, s2.rho, u, v, wrap);
                    }
                }
            }
        }
    }

    g.build_adjacency();
    return g;
}

} // namespace

std::uint64_t CellGraph::pack(const std::vector<int>& rho) const {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
        key = key * static_cast<std::uint64_t>(2 * dims[i]) + static_cast<std::uint64_t>(rho[i]);
    return key;
}

std::vector<int> CellGraph::unpack(std::uint64_t key) const {
    std::vector<int> rho(n);
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t period = static_cast<std::uint64_t>(2 * dims[i]);
        rho[i] = static_cast<int>(key % period);
        key /= period;
    }
    return rho;
}

int CellGraph::node_at(std::uint64_t key) const {
    auto it = index_of_key.find(key);
    return it == index_of_key.end() ? -1 : it->second;
}

double CellGraph::total_volume() const {
    double v = 0.0;
    for (const GraphNode& node : nodes)
        v += node.volume;
    return v;
}

double CellGraph::max_edge_length() const {
    double m = 0.0;
    for (const GraphEdge& e : edges)
        m = std::max(m, e.length);
    return m;
}

double CellGraph::edge_set_area(const std::vector<int>& edge_ids) const {
    double a = 0.0;
    for (int e : edge_ids)
        a += edges[e].area;
    return a;
}

void CellGraph::build_adjacency() {
    adj.assign(nodes.size(), {});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].u].push_back({edges[e].v, e});
        adj[edges[e].v].push_back({edges[e].u, e});
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end());
}

CellGraph ambient_graph(const CubicalTorus& mesh) {
    return ambient_graph(std::make_shared<const CubicalTorus>(mesh));
}

CellGraph ambient_graph(std::shared_ptr<const CubicalTorus> mesh) {
    mesh->validate();
    CellGraph shell;
    shell.n = mesh->n;
    shell.dims = mesh->dims;
    std::vector<std::uint64_t> keys;
    keys.reserve(mesh->cell_count());
    std::vector<int> rho(mesh->n);
    for (std::size_t ci = 0; ci < mesh->cell_count(); ++ci) {
        std::vector<int> x = mesh->cell_coords(ci);
        for (int i = 0; i < mesh->n; ++i)
            rho[i] = 2 * x[i] + 1;
        keys.push_back(shell.pack(rho));
    }
    return build_graph(std::move(mesh), std::move(keys), shell.n);
}

CellGraph intrinsic_graph(const CellGraph& g, const std::vector<int>& surface_edges) {
    if (!g.source)
        throw std::logic_error("intrinsic_graph: graph lacks a source mesh");
    if (g.dim < 1)
        throw std::invalid_argument("intrinsic_graph: cannot descend below dimension 0");
    std::vector<std::uint64_t> keys;
    keys.reserve(surface_edges.size());
    for (int e : surface_edges)
        keys.push_back(g.edges.at(e).via);
    return build_graph(g.source, std::move(keys), g.dim - 1);
}

DistanceField distance_field(const CellGraph& g, int source) {
    if (source < 0 || source >= static_cast<int>(g.nodes.size()))
        throw std::out_of_range("distance_field: source node out of range");
    DistanceField df;
    df.source = source;
    df.dist.assign(g.nodes.size(), std::numeric_limits<double>::infinity());
    df.parent_edge.assign(g.nodes.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    df.dist[source] = 0.0;
    heap.push({0.0, source});
    std::vector<char> done(g.nodes.size(), 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u])
            continue;
        done[u] = 1;
        for (auto [v, e] : g.adj[u]) {
            double nd = d + g.edges[e].length;
            if (nd < df.dist[v]) {
                df.dist[v] = nd;
                df.parent_edge[v] = e;
                heap.push({nd, v});
            }
        }
    }
    return df;
}

Ball metric_ball(const CellGraph& g, const DistanceField& df, double R) {
    Ball b;
    b.center = df.source;
    b.radius = R;
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
        if (df.dist[i] <= R) {
            b.nodes.push_back(i);
            b.volume += g.nodes[i].volume;
        }
    }
    return b;
}

Sphere metric_sphere(const CellGraph& g, const DistanceField& df, double t) {
    Sphere s;
    s.center = df.source;
    s.t = t;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        bool in_u = df.dist[g.edges[e].u] <= t;
        bool in_v = df.dist[g.edges[e].v] <= t;
        if (in_u != in_v) {
            s.edges.push_back(e);
            s.area += g.edges[e].area;
        }
    }
    return s;
}

std::vector<int> edges_inside_ball(const CellGraph& g, const DistanceField& df, double R) {
    std::vector<int> inside;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (df.dist[g.edges[e].u] <= R && df.dist[g.edges[e].v] <= R)
            inside.push_back(e);
    return inside;
}

CoareaSelection coarea_select_t(const CellGraph& g, const DistanceField& df, double R, double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("coarea: beta must lie in (0,1)");
    if (!(R > 0.0))
        throw std::invalid_argument("coarea: R must be positive");
    std::vector<double> levels;
    for (double d : df.dist)
        if (d > beta * R && d < R)
            levels.push_back(d);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.empty())
        throw VerificationError("coarea: no sphere level strictly between beta*R and R; "
                                "the discretization is too coarse for this radius");

    CoareaSelection sel;
    sel.levels_considered = static_cast<int>(levels.size());
    double best = std::numeric_limits<double>::infinity();
    for (double t : levels) {
        Sphere s = metric_sphere(g, df, t);
        if (s.area <= best) {  // ties resolve toward the larger level
            best = s.area;
            sel.t = t;
            sel.sphere_area = s.area;
            sel.sphere_edges = std::move(s.edges);
        }
    }
    Ball b = metric_ball(g, df, R);
    sel.ball_volume = b.volume;
    sel.bound = b.volume / ((1.0 - beta) * R);
    sel.within_bound = sel.sphere_area <= sel.bound;
    return sel;
}

CoareaSelection coarea_select_t(const CellGraph& g, int p, double R, double beta) {
    DistanceField df = distance_field(g, p);
    return coarea_select_t(g, df, R, beta);
}

} // namespace sysgeo
