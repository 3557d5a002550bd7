#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lssim/plane.hpp"

namespace lssim {

enum class Basis : std::uint8_t { ZZ, XX };

/// Motion direction of a graph edge (as travelled).
enum class Dir : std::uint8_t {
    Left,
    Right,
    Up,
    Down,
    LayerSwap,   // two-layer layouts, vertical stack move
    BypassDown,  // logic cell -> gap fragment at its left/right boundary
    BypassUp,    // gap fragment -> logic cell
    BypassAlong, // fragment -> fragment
};

struct PathNode {
    enum class Kind : std::uint8_t { Cell, CellFrag, GapFrag };
    Kind kind = Kind::Cell;
    int layer = 0;
    int row = 0;
    int col = 0;
    int node_id = 0;

    bool operator==(const PathNode&) const = default;
};

/// One routed LS operation: the ordered occupied nodes from the first
/// operand cell to the second (or the single expanded/occupied cell set for
/// one-qubit operations). cost_qubits is the exact number of data qubits
/// involved; span_cells is the path length L of the closed-form counts
/// (logic cells plus cell columns traversed through the bypass layer).
struct Path {
    std::vector<PathNode> nodes;
    std::optional<Basis> basis;
    bool via_bypass = false;
    long long cost_qubits = 0;
    int logic_cells = 0;
    int span_cells = 0;
};

struct Blocked {
    /// Occupied nodes preventing the operation (empty when the plane offers
    /// no path even when idle).
    std::vector<PathNode> blockers;
};

using RouteResult = std::variant<Path, Blocked>;

inline bool is_blocked(const RouteResult& r) { return std::holds_alternative<Blocked>(r); }

struct EffectiveLength {
    int span_cells = 0; // L
    double l_prime = 0.0;
};

/// Data qubits involved in a straight path of L allocated cells:
/// d(Ld + L - 1) in-plane, d(2d + 2L - 3) through the bypass layer.
long long data_qubit_count(int span_cells, Distance d, bool via_bypass);

EffectiveLength effective_length(const Path& path, Distance d);

/// Search graph over a plane: logic cells on every layer plus, for the
/// Bypass layout, one node per cell fragment and per gap fragment. Edge
/// weights are the data-qubit increments, so shortest paths minimize L'.
/// Immutable after construction.
class RouteGraph {
public:
    explicit RouteGraph(const Plane& plane);

    const Plane& plane() const { return *plane_; }
    int node_count() const { return n_nodes_; }

    int cell_node(int layer, int r, int c) const {
        return layer * layer_stride_ + r * cols_ + c;
    }
    int cell_frag_node(int r, int c) const { return frag_base_ + r * cols_ + c; }
    int gap_frag_node(int r, int c) const { return gap_base_ + r * cols_ + c; }

    PathNode describe(int node) const;
    /// True for nodes a path may pass through when free (ancilla cells and
    /// fragments; data, pool, and factory cells are endpoints or walls).
    bool traversable(int node) const { return open_[node]; }

    struct Edge {
        int to;
        int weight;
        Dir dir;
    };
    const std::vector<Edge>& edges(int node) const { return adj_[node]; }

private:
    const Plane* plane_;
    int rows_, cols_, layer_stride_, frag_base_, gap_base_, n_nodes_;
    std::vector<std::vector<Edge>> adj_;
    std::vector<char> open_;
};

/// Dynamic busy flags over a route graph's nodes.
class Occupancy {
public:
    explicit Occupancy(const RouteGraph& graph) : busy_(graph.node_count(), 0) {}
    bool busy(int node) const { return busy_[node]; }
    void set(int node, bool b) { busy_[node] = b ? 1 : 0; }
    void occupy(const Path& path, bool b) {
        for (const PathNode& n : path.nodes) busy_[n.node_id] = b ? 1 : 0;
    }

private:
    std::vector<char> busy_;
};

/// Minimum-L' path between two data cells over free nodes. Endpoint edges
/// respect the basis: ZZ attaches at left/right boundaries (horizontal moves
/// or bypass descents), XX at top/bottom (vertical moves). Inter-layer moves
/// are basis-neutral.
RouteResult find_merge_path(const RouteGraph& graph, const Occupancy& occ, CellRef src,
                            CellRef dst, Basis basis);

/// Nearest-first route from a data cell to any of the given pool cells.
RouteResult find_magic_path(const RouteGraph& graph, const Occupancy& occ, CellRef src,
                            std::span<const Coord> pools, Basis basis);

/// One-qubit expansion (OP_H / OP_S): the data cell plus one free adjacent
/// ancilla, preferring right, left, up, then down.
RouteResult find_expansion(const RouteGraph& graph, const Occupancy& occ, CellRef cell);

/// Single-cell occupation (INIT / destructive measurements).
Path single_cell_path(const RouteGraph& graph, CellRef cell);

/// Minimum path cost (in data qubits) from src to each target cell under the
/// given occupancy, or -1 where unreachable. One Dijkstra, many stitches.
std::vector<long long> min_costs_to_cells(const RouteGraph& graph, const Occupancy& occ,
                                          CellRef src, std::span<const CellRef> targets,
                                          Basis basis);

/// Mean minimum L' over all unordered data-cell pairs on an idle plane
/// (ZZ basis). Requires at least two data cells.
double avg_pairwise_effective_length(const Plane& plane);

} // namespace lssim
