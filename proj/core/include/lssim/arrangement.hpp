#pragma once

#include <string>
#include <vector>

#include "lssim/types.hpp"

namespace lssim {

/// Rectangular map of cell roles, row-major.
class RoleGrid {
public:
    RoleGrid() = default;
    RoleGrid(int rows, int cols, CellRole fill = CellRole::Ancilla)
        : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    CellRole at(int r, int c) const { return cells_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, CellRole role) { cells_[static_cast<size_t>(r) * cols_ + c] = role; }
    bool in_bounds(int r, int c) const { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

    int count(CellRole role) const;
    std::vector<Coord> cells_with(CellRole role) const;

    bool operator==(const RoleGrid&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<CellRole> cells_;
};

/// Result of the immediate-operation capability check.
struct IoReport {
    bool capable = false;
    /// Data cells missing a horizontal or vertical ancilla neighbor (condition I).
    std::vector<Coord> cond1_violations;
    /// Ancilla connected components beyond the first (condition II); each entry
    /// is one disconnected component.
    std::vector<std::vector<Coord>> cond2_violations;
};

/// Builds the smallest tiling of `pattern` holding at least `n_data_cells`
/// data cells, then demotes excess data cells (reverse scan order) so the
/// returned grid holds exactly `n_data_cells`.
RoleGrid generate_arrangement(const ArrangementPattern& pattern, int n_data_cells);

/// Same, with an explicit interior height (wide arrangements). The emitted
/// grid is `interior_height` pattern rows plus the surrounding ancilla frame.
RoleGrid generate_arrangement_with_height(PatternKind kind, int n_data_cells, int interior_height);

IoReport check_io_capable(const RoleGrid& grid);

/// Maximum data-cell ratio over all IO-capable role assignments of the grid.
/// Exhaustive (2^(rows*cols) assignments); refuses grids above 20 cells.
double max_density_bruteforce(int rows, int cols);

/// Parses an ASCII role grid: one row per line, characters D/A/P/F
/// (case-insensitive, '.' = ancilla). Lines starting with '#' are skipped.
RoleGrid parse_role_grid(const std::string& text);
std::string to_text(const RoleGrid& grid);

} // namespace lssim
