#include "lssim/route.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace lssim {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

Dir opposite(Dir dir) {
    switch (dir) {
        case Dir::Left: return Dir::Right;
        case Dir::Right: return Dir::Left;
        case Dir::Up: return Dir::Down;
        case Dir::Down: return Dir::Up;
        case Dir::LayerSwap: return Dir::LayerSwap;
        case Dir::BypassDown: return Dir::BypassUp;
        case Dir::BypassUp: return Dir::BypassDown;
        case Dir::BypassAlong: return Dir::BypassAlong;
    }
    return dir;
}

// Endpoint attachment filters. ZZ merges attach at the left/right (Z)
// boundaries: horizontal in-plane moves or a bypass descent/ascent. XX
// merges attach at the top/bottom (X) boundaries: vertical moves only.
// Inter-layer moves through the stack are basis-neutral.
bool endpoint_dir_ok(Dir dir, Basis basis) {
    switch (dir) {
        case Dir::Left:
        case Dir::Right:
        case Dir::BypassDown:
        case Dir::BypassUp:
            return basis == Basis::ZZ;
        case Dir::Up:
        case Dir::Down:
            return basis == Basis::XX;
        case Dir::LayerSwap:
            return true;
        case Dir::BypassAlong:
            return false;
    }
    return false;
}

} // namespace

long long data_qubit_count(int span_cells, Distance d, bool via_bypass) {
    if (span_cells < 2) throw ConfigError("data_qubit_count requires a span of at least 2 cells");
    long long L = span_cells;
    long long dd = d.value;
    return via_bypass ? dd * (2 * dd + 2 * L - 3) : dd * (L * dd + L - 1);
}

EffectiveLength effective_length(const Path& path, Distance d) {
    EffectiveLength el;
    el.span_cells = path.span_cells;
    el.l_prime = static_cast<double>(path.cost_qubits) / (static_cast<double>(d.value) * d.value);
    return el;
}

RouteGraph::RouteGraph(const Plane& plane) : plane_(&plane) {
    rows_ = plane.rows();
    cols_ = plane.cols();
    layer_stride_ = rows_ * cols_;
    const int n_layers = plane.n_layers();
    const bool bypass = plane.layout() == LayoutKind::Bypass;
    frag_base_ = n_layers * layer_stride_;
    gap_base_ = frag_base_ + (bypass ? layer_stride_ : 0);
    n_nodes_ = gap_base_ + (bypass ? layer_stride_ : 0);

    const int d = plane.distance().value;
    const int w_cell = d * d + d; // entering a cell across a gap seam
    const int w_frag = d;         // entering a d x 1 fragment
    const int w_ascend = d * d;   // fragment -> cell, no extra seam

    adj_.resize(n_nodes_);
    open_.assign(n_nodes_, 0);

    for (int l = 0; l < n_layers; ++l) {
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                if (!plane.cell_exists(l, r, c)) continue;
                int u = cell_node(l, r, c);
                open_[u] = plane.role(l, r, c) == CellRole::Ancilla;
                auto& edges = adj_[u];
                if (plane.cell_exists(l, r, c + 1))
                    edges.push_back({cell_node(l, r, c + 1), w_cell, Dir::Right});
                if (plane.cell_exists(l, r, c - 1))
                    edges.push_back({cell_node(l, r, c - 1), w_cell, Dir::Left});
                if (plane.cell_exists(l, r - 1, c))
                    edges.push_back({cell_node(l, r - 1, c), w_cell, Dir::Up});
                if (plane.cell_exists(l, r + 1, c))
                    edges.push_back({cell_node(l, r + 1, c), w_cell, Dir::Down});
                if (plane.cell_exists(1 - l, r, c))
                    edges.push_back({cell_node(1 - l, r, c), w_cell, Dir::LayerSwap});
                if (bypass && l == 0) {
                    if (plane.has_hgap_frag(r, c))
                        edges.push_back({gap_frag_node(r, c), w_frag, Dir::BypassDown});
                    if (c > 0 && plane.has_hgap_frag(r, c - 1))
                        edges.push_back({gap_frag_node(r, c - 1), w_frag, Dir::BypassDown});
                }
            }
        }
    }

    if (bypass) {
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                if (plane.has_cell_frag(r, c)) {
                    int u = cell_frag_node(r, c);
                    open_[u] = 1;
                    if (plane.has_hgap_frag(r, c))
                        adj_[u].push_back({gap_frag_node(r, c), w_frag, Dir::BypassAlong});
                    if (c > 0 && plane.has_hgap_frag(r, c - 1))
                        adj_[u].push_back({gap_frag_node(r, c - 1), w_frag, Dir::BypassAlong});
                }
                if (plane.has_hgap_frag(r, c)) {
                    int u = gap_frag_node(r, c);
                    open_[u] = 1;
                    auto& edges = adj_[u];
                    edges.push_back({cell_node(0, r, c + 1), w_ascend, Dir::BypassUp});
                    edges.push_back({cell_node(0, r, c), w_ascend, Dir::BypassUp});
                    if (plane.has_cell_frag(r, c + 1))
                        edges.push_back({cell_frag_node(r, c + 1), w_frag, Dir::BypassAlong});
                    if (plane.has_cell_frag(r, c))
                        edges.push_back({cell_frag_node(r, c), w_frag, Dir::BypassAlong});
                }
            }
        }
    }
}

PathNode RouteGraph::describe(int node) const {
    PathNode pn;
    pn.node_id = node;
    if (node >= gap_base_ && plane_->layout() == LayoutKind::Bypass) {
        pn.kind = PathNode::Kind::GapFrag;
        int off = node - gap_base_;
        pn.layer = 0;
        pn.row = off / cols_;
        pn.col = off % cols_;
    } else if (node >= frag_base_ && plane_->layout() == LayoutKind::Bypass) {
        pn.kind = PathNode::Kind::CellFrag;
        int off = node - frag_base_;
        pn.layer = 0;
        pn.row = off / cols_;
        pn.col = off % cols_;
    } else {
        pn.kind = PathNode::Kind::Cell;
        pn.layer = node / layer_stride_;
        int off = node % layer_stride_;
        pn.row = off / cols_;
        pn.col = off % cols_;
    }
    return pn;
}

namespace {

struct Search {
    std::vector<long long> dist;
    std::vector<int> parent;
};

// Dijkstra over free traversable nodes, starting at a data/pool endpoint.
// Endpoint out-edges obey the basis filter; non-open nodes (data cells,
// pools, factories) are never expanded — targets are stitched afterwards.
Search search_from(const RouteGraph& graph, const Occupancy& occ, int src, Basis basis) {
    Search s;
    s.dist.assign(graph.node_count(), kInf);
    s.parent.assign(graph.node_count(), -1);
    const int d = graph.plane().distance().value;

    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    s.dist[src] = static_cast<long long>(d) * d;
    pq.push({s.dist[src], src});

    while (!pq.empty()) {
        auto [cost, u] = pq.top();
        pq.pop();
        if (cost > s.dist[u]) continue;
        for (const RouteGraph::Edge& e : graph.edges(u)) {
            if (u == src && !endpoint_dir_ok(e.dir, basis)) continue;
            if (!graph.traversable(e.to) || occ.busy(e.to)) continue;
            long long nd = cost + e.weight;
            if (nd < s.dist[e.to]) {
                s.dist[e.to] = nd;
                s.parent[e.to] = u;
                pq.push({nd, e.to});
            }
        }
    }
    return s;
}

struct Stitch {
    long long cost = kInf;
    int via = -1; // in-neighbor of dst
};

// Final-edge weight entering a cell endpoint, derived from the mirror edge.
int enter_dst_weight(Dir in_dir, int d) {
    return in_dir == Dir::BypassUp ? d * d : d * d + d;
}

Stitch stitch_target(const RouteGraph& graph, const Occupancy& occ, const Search& s, int src,
                     int dst, Basis basis) {
    Stitch best;
    for (const RouteGraph::Edge& e : graph.edges(dst)) {
        Dir in_dir = opposite(e.dir);
        if (!endpoint_dir_ok(in_dir, basis)) continue;
        int u = e.to;
        long long cost;
        if (u == src) {
            // Direct endpoint-to-endpoint merge; the single edge is both the
            // first and the last, so it already passed the basis filter.
            cost = s.dist[src] + enter_dst_weight(in_dir, graph.plane().distance().value);
        } else {
            if (!graph.traversable(u) || occ.busy(u) || s.dist[u] >= kInf) continue;
            cost = s.dist[u] + enter_dst_weight(in_dir, graph.plane().distance().value);
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.via = u;
        }
    }
    return best;
}

Path assemble_path(const RouteGraph& graph, const Search& s, int src, int dst, int via,
                   long long cost, Basis basis) {
    std::vector<int> chain{dst};
    if (via != dst) {
        for (int u = via; u != -1; u = s.parent[u]) {
            chain.push_back(u);
            if (u == src) break;
        }
    }
    std::reverse(chain.begin(), chain.end());

    Path path;
    path.basis = basis;
    path.cost_qubits = cost;
    for (int node : chain) {
        PathNode pn = graph.describe(node);
        if (pn.kind == PathNode::Kind::Cell) ++path.logic_cells;
        if (pn.kind != PathNode::Kind::Cell) path.via_bypass = true;
        path.nodes.push_back(pn);
    }
    path.span_cells = path.logic_cells;
    for (const PathNode& n : path.nodes)
        if (n.kind == PathNode::Kind::CellFrag) ++path.span_cells;
    return path;
}

RouteResult route_to_targets(const RouteGraph& graph, const Occupancy& occ, int src,
                             std::span<const int> targets, Basis basis) {
    Search s = search_from(graph, occ, src, basis);
    Stitch best;
    int best_dst = -1;
    for (int dst : targets) {
        Stitch st = stitch_target(graph, occ, s, src, dst, basis);
        if (st.cost < best.cost) {
            best = st;
            best_dst = dst;
        }
    }
    if (best_dst >= 0) return assemble_path(graph, s, src, best_dst, best.via, best.cost, basis);

    // Blocked: identify the occupied nodes on the best idle-plane path as
    // the hazard evidence; an empty blocker set means no path exists at all.
    Occupancy idle(graph);
    Search si = search_from(graph, idle, src, basis);
    Stitch ibest;
    int ibest_dst = -1;
    for (int dst : targets) {
        Stitch st = stitch_target(graph, idle, si, src, dst, basis);
        if (st.cost < ibest.cost) {
            ibest = st;
            ibest_dst = dst;
        }
    }
    Blocked blocked;
    if (ibest_dst >= 0) {
        Path ideal = assemble_path(graph, si, src, ibest_dst, ibest.via, ibest.cost, basis);
        for (const PathNode& n : ideal.nodes)
            if (occ.busy(n.node_id)) blocked.blockers.push_back(n);
    }
    return blocked;
}

} // namespace

RouteResult find_merge_path(const RouteGraph& graph, const Occupancy& occ, CellRef src,
                            CellRef dst, Basis basis) {
    const Plane& plane = graph.plane();
    if (!plane.cell_exists(src.layer, src.row, src.col) ||
        !plane.cell_exists(dst.layer, dst.row, dst.col))
        throw SimError("merge operand is not on the plane");
    int s = graph.cell_node(src.layer, src.row, src.col);
    int t = graph.cell_node(dst.layer, dst.row, dst.col);
    return route_to_targets(graph, occ, s, std::span<const int>(&t, 1), basis);
}

RouteResult find_magic_path(const RouteGraph& graph, const Occupancy& occ, CellRef src,
                            std::span<const Coord> pools, Basis basis) {
    if (pools.empty()) return Blocked{};
    std::vector<int> targets;
    targets.reserve(pools.size());
    for (const Coord& p : pools) {
        if (occ.busy(graph.cell_node(0, p.row, p.col))) continue;
        targets.push_back(graph.cell_node(0, p.row, p.col));
    }
    if (targets.empty()) {
        Blocked blocked;
        for (const Coord& p : pools) blocked.blockers.push_back(graph.describe(graph.cell_node(0, p.row, p.col)));
        return blocked;
    }
    int s = graph.cell_node(src.layer, src.row, src.col);
    return route_to_targets(graph, occ, s, targets, basis);
}

RouteResult find_expansion(const RouteGraph& graph, const Occupancy& occ, CellRef cell) {
    const Plane& plane = graph.plane();
    const int d = plane.distance().value;
    const int dr[] = {0, 0, -1, 1}; // right, left, up, down preference
    const int dc[] = {1, -1, 0, 0};
    Blocked blocked;
    for (int k = 0; k < 4; ++k) {
        int r = cell.row + dr[k], c = cell.col + dc[k];
        if (!plane.cell_exists(cell.layer, r, c)) continue;
        if (plane.role(cell.layer, r, c) != CellRole::Ancilla) continue;
        int node = graph.cell_node(cell.layer, r, c);
        if (occ.busy(node)) {
            blocked.blockers.push_back(graph.describe(node));
            continue;
        }
        Path path;
        path.cost_qubits = 2LL * d * d + d;
        path.logic_cells = 2;
        path.span_cells = 2;
        path.nodes = {graph.describe(graph.cell_node(cell.layer, cell.row, cell.col)),
                      graph.describe(node)};
        return path;
    }
    return blocked;
}

Path single_cell_path(const RouteGraph& graph, CellRef cell) {
    const int d = graph.plane().distance().value;
    Path path;
    path.cost_qubits = static_cast<long long>(d) * d;
    path.logic_cells = 1;
    path.span_cells = 1;
    path.nodes = {graph.describe(graph.cell_node(cell.layer, cell.row, cell.col))};
    return path;
}

std::vector<long long> min_costs_to_cells(const RouteGraph& graph, const Occupancy& occ,
                                          CellRef src, std::span<const CellRef> targets,
                                          Basis basis) {
    int s = graph.cell_node(src.layer, src.row, src.col);
    Search search = search_from(graph, occ, s, basis);
    std::vector<long long> out;
    out.reserve(targets.size());
    for (const CellRef& t : targets) {
        int dst = graph.cell_node(t.layer, t.row, t.col);
        if (dst == s) {
            out.push_back(0);
            continue;
        }
        Stitch st = stitch_target(graph, occ, search, s, dst, basis);
        out.push_back(st.cost >= kInf ? -1 : st.cost);
    }
    return out;
}

double avg_pairwise_effective_length(const Plane& plane) {
    const auto& data = plane.data_cells();
    if (data.size() < 2)
        throw ConfigError("avg_pairwise_effective_length requires at least two data cells");

    RouteGraph graph(plane);
    Occupancy idle(graph);
    const double dd = static_cast<double>(plane.distance().value) * plane.distance().value;

    double sum = 0.0;
    long long pairs = 0;
    for (size_t i = 0; i < data.size(); ++i) {
        int src = graph.cell_node(data[i].layer, data[i].row, data[i].col);
        Search s = search_from(graph, idle, src, Basis::ZZ);
        for (size_t j = i + 1; j < data.size(); ++j) {
            int dst = graph.cell_node(data[j].layer, data[j].row, data[j].col);
            Stitch st = stitch_target(graph, idle, s, src, dst, Basis::ZZ);
            if (st.cost >= kInf)
                throw SimError("plane is not routable between all data-cell pairs");
            sum += static_cast<double>(st.cost) / dd;
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

} // namespace lssim
