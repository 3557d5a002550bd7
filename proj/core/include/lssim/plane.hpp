#pragma once

#include <string>
#include <vector>

#include "lssim/arrangement.hpp"
#include "lssim/types.hpp"

namespace lssim {

/// Physical-qubit totals for one floor part.
struct PartQubits {
    std::string part;
    long long data_qubits = 0;
    long long ancilla_qubits = 0;
    double weighted_cells = 0.0;
};

struct ResourceCount {
    long long data_qubits = 0;
    long long ancilla_qubits = 0;
    /// Logic cells count 1 each, bypass fragments 1/d each.
    double total_cells_weighted = 0.0;
    std::vector<PartQubits> parts;
    /// Subtotal over the Pools and Cells parts (the tradeoff-plot axis).
    long long cells_pools_qubits = 0;

    long long total_qubits() const { return data_qubits + ancilla_qubits; }
};

/// A laid-out qubit plane: one or two cell layers plus, for the Bypass
/// layout, per-cell and per-gap fragment flags. Immutable once built; safe
/// to share across concurrent simulation runs.
///
/// Floor plan (layer 0): column 0 holds the factory regions (opaque, no
/// routing), column 1 the magic-state pools (one per factory), and columns
/// >= region_col0() the Cells region with the data-cell arrangement. For
/// two-layer layouts, layer 1 spans the Cells region only.
class Plane {
public:
    Plane() = default;

    LayoutKind layout() const { return layout_; }
    Distance distance() const { return d_; }
    const ArrangementPattern& pattern() const { return pattern_; }
    int n_factories() const { return n_factories_; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int n_layers() const { return static_cast<int>(layers_.size()); }
    int region_col0() const { return region_col0_; }

    bool cell_exists(int layer, int r, int c) const {
        if (layer < 0 || layer >= n_layers() || r < 0 || r >= rows_ || c < 0 || c >= cols_)
            return false;
        return layer == 0 || c >= region_col0_;
    }
    CellRole role(int layer, int r, int c) const { return layers_[layer].at(r, c); }
    const RoleGrid& layer_grid(int layer) const { return layers_[layer]; }

    bool has_cell_frag(int r, int c) const {
        return layout_ == LayoutKind::Bypass && cell_frag_[static_cast<size_t>(r) * cols_ + c];
    }
    /// Fragment on the horizontal gap between (r,c) and (r,c+1).
    bool has_hgap_frag(int r, int c) const {
        return layout_ == LayoutKind::Bypass && c + 1 < cols_ &&
               hgap_frag_[static_cast<size_t>(r) * cols_ + c];
    }

    /// Data cells in deterministic scan order (layer, row, col).
    const std::vector<CellRef>& data_cells() const { return data_cells_; }
    /// Pool cells on layer 0, one per factory, in factory order.
    const std::vector<Coord>& pool_cells() const { return pool_cells_; }

    int bypass_fragment_count() const { return n_cell_frags_ + n_hgap_frags_; }

    /// Weighted cell count backing the decoder capacity: every Pools/Cells
    /// cell on every layer counts 1, every bypass fragment 1/d. Factories
    /// are excluded (their decoding is not modeled).
    double weighted_cells_decoding() const;

    /// Versioned JSON document with layers, role grids, fragments, and
    /// floor parts. Stable across runs; used for golden tests.
    std::string to_json() const;

    /// Builds a plane directly from a role grid (no factories/pools frame).
    /// The whole grid is the Cells region; for Bypass, fragments cover it.
    static Plane from_grid(LayoutKind layout, Distance d, const RoleGrid& grid);

    friend Plane build_floor_plan(LayoutKind layout, ArrangementPattern pattern, int n_data_cells,
                                  int n_factories, Distance d);

private:
    LayoutKind layout_ = LayoutKind::OneLayerD;
    Distance d_{};
    ArrangementPattern pattern_{};
    int n_factories_ = 0;
    int rows_ = 0;
    int cols_ = 0;
    int region_col0_ = 0;
    std::vector<RoleGrid> layers_;
    std::vector<char> cell_frag_;
    std::vector<char> hgap_frag_;
    int n_cell_frags_ = 0;
    int n_hgap_frags_ = 0;
    std::vector<CellRef> data_cells_;
    std::vector<Coord> pool_cells_;

    void attach_fragments();
    void collect_cells();
};

/// Assembles the full floor plan (factory column, pool column, Cells region)
/// for the requested layout. For TwoLayerDD the arrangement is replicated in
/// both layers (data split evenly); for TwoLayerDP layer 1 is all ancilla;
/// for Bypass, fragments are attached under the Cells region. A wide pattern
/// with unresolved height runs the height optimizer.
Plane build_floor_plan(LayoutKind layout, ArrangementPattern pattern, int n_data_cells,
                       int n_factories, Distance d);

/// Picks the interior height minimizing the average pairwise effective path
/// length for a Bypass wide arrangement, then clamps it to >= n_factories.
/// Ties break toward the smaller height.
int optimize_wide_height(int n_data_cells, PatternKind kind, int n_factories, Distance d);

ResourceCount count_physical_qubits(const Plane& plane);

} // namespace lssim
