#include "sysgeo/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sysgeo {

MaxFlow::MaxFlow(int node_count) : head_(node_count, -1) {
    if (node_count <= 0)
        throw std::invalid_argument("maxflow: need at least one node");
}

int MaxFlow::add_arc(double cap_uv, int u, int v, double cap_vu) {
    if (u < 0 || v < 0 || u >= node_count() || v >= node_count())
        throw std::out_of_range("maxflow: arc endpoint out of range");
    if (cap_uv < 0.0 || cap_vu < 0.0)
        throw std::invalid_argument("maxflow: negative capacity");
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({v, head_[u], cap_uv});
    head_[u] = id;
    arcs_.push_back({u, head_[v], cap_vu});
    head_[v] = id + 1;
    tol_ = std::max(tol_, 1e-13 * std::max(cap_uv, cap_vu));
    return id;
}

int MaxFlow::add_undirected(int u, int v, double cap) {
    return add_arc(cap, u, v, cap);
}

bool MaxFlow::bfs_levels(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
            if (arcs_[a].cap > tol_ && level_[arcs_[a].to] < 0) {
                level_[arcs_[a].to] = level_[u] + 1;
                q.push(arcs_[a].to);
            }
        }
    }
    return level_[t] >= 0;
}

double MaxFlow::dfs_push(int u, int t, double limit) {
    if (u == t)
        return limit;
    for (int& a = iter_[u]; a >= 0; a = arcs_[a].next) {
        int v = arcs_[a].to;
        if (arcs_[a].cap <= tol_ || level_[v] != level_[u] + 1)
            continue;
        double pushed = dfs_push(v, t, std::min(limit, arcs_[a].cap));
        if (pushed > 0.0) {
            arcs_[a].cap -= pushed;
            arcs_[a ^ 1].cap += pushed;
            return pushed;
        }
    }
    level_[u] = -1;  // dead end for this phase
    return 0.0;
}

double MaxFlow::run(int s, int t) {
    if (s == t)
        throw std::invalid_argument("maxflow: source equals sink");
    source_ = s;
    sink_ = t;
    double flow = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    while (bfs_levels(s, t)) {
        iter_ = head_;
        for (;;) {
            double pushed = dfs_push(s, t, inf);
            if (pushed <= 0.0)
                break;
            flow += pushed;
        }
    }
    return flow;
}

std::vector<char> MaxFlow::min_cut_side() const {
    if (source_ < 0)
        throw std::logic_error("maxflow: min_cut_side before run");
    std::vector<char> side(head_.size(), 0);
    std::queue<int> q;
    side[source_] = 1;
    q.push(source_);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
            if (arcs_[a].cap > tol_ && !side[arcs_[a].to]) {
                side[arcs_[a].to] = 1;
                q.push(arcs_[a].to);
            }
        }
    }
    return side;
}

} // namespace sysgeo
