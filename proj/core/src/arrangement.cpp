#include "lssim/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lssim {

const char* to_string(CellRole role) {
    switch (role) {
        case CellRole::Data: return "data";
        case CellRole::Ancilla: return "ancilla";
        case CellRole::Pool: return "pool";
        case CellRole::Factory: return "factory";
    }
    return "?";
}

const char* to_string(LayoutKind layout) {
    switch (layout) {
        case LayoutKind::OneLayerD: return "1L-D";
        case LayoutKind::TwoLayerDD: return "2L-DD";
        case LayoutKind::TwoLayerDP: return "2L-DP";
        case LayoutKind::Bypass: return "bypass";
    }
    return "?";
}

const char* to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::Sparse25: return "sparse25";
        case PatternKind::Dense44: return "dense44";
        case PatternKind::Dense50: return "dense50";
    }
    return "?";
}

LayoutKind layout_from_string(const std::string& s) {
    if (s == "1L-D" || s == "1l-d" || s == "1L") return LayoutKind::OneLayerD;
    if (s == "2L-DD" || s == "2l-dd") return LayoutKind::TwoLayerDD;
    if (s == "2L-DP" || s == "2l-dp") return LayoutKind::TwoLayerDP;
    if (s == "bypass" || s == "Bypass") return LayoutKind::Bypass;
    throw ConfigError("unknown layout '" + s + "' (expected 1L-D, 2L-DD, 2L-DP, or bypass)");
}

PatternKind pattern_from_string(const std::string& s) {
    if (s == "sparse25" || s == "25") return PatternKind::Sparse25;
    if (s == "dense44" || s == "44") return PatternKind::Dense44;
    if (s == "dense50" || s == "50") return PatternKind::Dense50;
    throw ConfigError("unknown pattern '" + s + "' (expected sparse25, dense44, or dense50)");
}

double nominal_r_data(PatternKind kind) {
    switch (kind) {
        case PatternKind::Sparse25: return 0.25;
        case PatternKind::Dense44: return 4.0 / 9.0;
        case PatternKind::Dense50: return 0.50;
    }
    return 0.0;
}

int RoleGrid::count(CellRole role) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), role));
}

std::vector<Coord> RoleGrid::cells_with(CellRole role) const {
    std::vector<Coord> out;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c) == role) out.push_back({r, c});
    return out;
}

namespace {

// Interior predicate of the dense50 staircase pattern: data cells form
// diagonal width-2 stripes; the ancilla stripes between them stay connected
// through the surrounding frame.
bool dense50_is_data(int r, int c) {
    int m = (c - r) % 4;
    if (m < 0) m += 4;
    return m < 2;
}

int dense50_count(int h, int w) {
    int n = 0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (dense50_is_data(r, c)) ++n;
    return n;
}

RoleGrid dense50_grid(int interior_h, int interior_w) {
    RoleGrid g(interior_h + 2, interior_w + 2, CellRole::Ancilla);
    for (int r = 0; r < interior_h; ++r)
        for (int c = 0; c < interior_w; ++c)
            if (dense50_is_data(r, c)) g.set(r + 1, c + 1, CellRole::Data);
    return g;
}

// Demote data cells from the bottom-right until exactly n remain.
void trim_to(RoleGrid& g, int n) {
    int have = g.count(CellRole::Data);
    for (int r = g.rows() - 1; r >= 0 && have > n; --r) {
        for (int c = g.cols() - 1; c >= 0 && have > n; --c) {
            if (g.at(r, c) == CellRole::Data) {
                g.set(r, c, CellRole::Ancilla);
                --have;
            }
        }
    }
}

std::pair<int, int> tile_dims(int n_tiles) {
    int tc = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_tiles))));
    int tr = (n_tiles + tc - 1) / tc;
    return {tr, tc};
}

} // namespace

RoleGrid generate_arrangement_with_height(PatternKind kind, int n_data_cells, int interior_height) {
    if (kind != PatternKind::Dense50)
        throw ConfigError("wide arrangement is only defined for the dense50 pattern");
    if (n_data_cells < 1) throw ConfigError("n_data_cells must be >= 1");
    if (interior_height < 1) throw ConfigError("wide height must be >= 1");

    int w = interior_height;
    while (dense50_count(interior_height, w) < n_data_cells) ++w;
    RoleGrid g = dense50_grid(interior_height, w);
    trim_to(g, n_data_cells);
    return g;
}

RoleGrid generate_arrangement(const ArrangementPattern& pattern, int n_data_cells) {
    if (n_data_cells < 1) throw ConfigError("n_data_cells must be >= 1");
    if (pattern.wide) {
        if (pattern.wide_height < 1)
            throw ConfigError("wide arrangement height is unresolved; run the height optimizer first");
        return generate_arrangement_with_height(pattern.kind, n_data_cells, pattern.wide_height);
    }

    switch (pattern.kind) {
        case PatternKind::Sparse25: {
            auto [tr, tc] = tile_dims(n_data_cells);
            RoleGrid g(2 * tr + 1, 2 * tc + 1, CellRole::Ancilla);
            for (int i = 0; i < tr; ++i)
                for (int j = 0; j < tc; ++j)
                    g.set(2 * i + 1, 2 * j + 1, CellRole::Data);
            trim_to(g, n_data_cells);
            return g;
        }
        case PatternKind::Dense44: {
            auto [tr, tc] = tile_dims((n_data_cells + 3) / 4);
            RoleGrid g(3 * tr + 1, 3 * tc + 1, CellRole::Ancilla);
            for (int r = 1; r < g.rows(); ++r)
                for (int c = 1; c < g.cols(); ++c)
                    if ((r - 1) % 3 < 2 && (c - 1) % 3 < 2) g.set(r, c, CellRole::Data);
            trim_to(g, n_data_cells);
            return g;
        }
        case PatternKind::Dense50: {
            int h = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * n_data_cells))));
            int w = h;
            while (dense50_count(h, w) < n_data_cells) ++w;
            RoleGrid g = dense50_grid(h, w);
            trim_to(g, n_data_cells);
            return g;
        }
    }
    throw ConfigError("unknown arrangement pattern");
}

IoReport check_io_capable(const RoleGrid& grid) {
    IoReport report;

    auto is = [&](int r, int c, CellRole role) {
        return grid.in_bounds(r, c) && grid.at(r, c) == role;
    };

    // Condition I: each data cell needs an ancilla to its left or right, and
    // one above or below. Cells outside the grid count as neither.
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (grid.at(r, c) != CellRole::Data) continue;
            bool horiz = is(r, c - 1, CellRole::Ancilla) || is(r, c + 1, CellRole::Ancilla);
            bool vert = is(r - 1, c, CellRole::Ancilla) || is(r + 1, c, CellRole::Ancilla);
            if (!horiz || !vert) report.cond1_violations.push_back({r, c});
        }
    }

    // Condition II: the ancilla cells form a single 4-connected component.
    std::vector<char> seen(static_cast<size_t>(grid.size()), 0);
    auto idx = [&](int r, int c) { return static_cast<size_t>(r) * grid.cols() + c; };
    bool first_component = true;
    for (int r0 = 0; r0 < grid.rows(); ++r0) {
        for (int c0 = 0; c0 < grid.cols(); ++c0) {
            if (grid.at(r0, c0) != CellRole::Ancilla || seen[idx(r0, c0)]) continue;
            std::vector<Coord> component;
            std::vector<Coord> stack{{r0, c0}};
            seen[idx(r0, c0)] = 1;
            while (!stack.empty()) {
                Coord cur = stack.back();
                stack.pop_back();
                component.push_back(cur);
                const int dr[] = {0, 0, -1, 1};
                const int dc[] = {-1, 1, 0, 0};
                for (int k = 0; k < 4; ++k) {
                    int r = cur.row + dr[k], c = cur.col + dc[k];
                    if (is(r, c, CellRole::Ancilla) && !seen[idx(r, c)]) {
                        seen[idx(r, c)] = 1;
                        stack.push_back({r, c});
                    }
                }
            }
            if (!first_component) report.cond2_violations.push_back(std::move(component));
            first_component = false;
        }
    }

    report.capable = report.cond1_violations.empty() && report.cond2_violations.empty();
    return report;
}

double max_density_bruteforce(int rows, int cols) {
    if (rows < 1 || cols < 1) throw ConfigError("grid dimensions must be positive");
    int n = rows * cols;
    if (n > 20)
        throw ConfigError("bruteforce limited to grids of at most 20 cells, got " +
                          std::to_string(n));

    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        RoleGrid g(rows, cols, CellRole::Ancilla);
        int n_data = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                g.set(i / cols, i % cols, CellRole::Data);
                ++n_data;
            }
        }
        if (n_data == 0) continue; // all-ancilla gives R_data = 0
        double r = static_cast<double>(n_data) / n;
        if (r <= best) continue;
        if (check_io_capable(g).capable) best = r;
    }
    return best;
}

RoleGrid parse_role_grid(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw ConfigError("role grid is empty");
    size_t width = rows[0].size();
    RoleGrid g(static_cast<int>(rows.size()), static_cast<int>(width), CellRole::Ancilla);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw ConfigError("role grid row " + std::to_string(r + 1) + " has inconsistent width");
        for (size_t c = 0; c < width; ++c) {
            switch (rows[r][c]) {
                case 'D': case 'd': g.set(static_cast<int>(r), static_cast<int>(c), CellRole::Data); break;
                case 'A': case 'a': case '.': break;
                case 'P': case 'p': g.set(static_cast<int>(r), static_cast<int>(c), CellRole::Pool); break;
                case 'F': case 'f': g.set(static_cast<int>(r), static_cast<int>(c), CellRole::Factory); break;
                default:
                    throw ConfigError(std::string("unknown role character '") + rows[r][c] + "'");
            }
        }
    }
    return g;
}

std::string to_text(const RoleGrid& grid) {
    std::string out;
    out.reserve(static_cast<size_t>(grid.rows()) * (grid.cols() + 1));
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            switch (grid.at(r, c)) {
                case CellRole::Data: out += 'D'; break;
                case CellRole::Ancilla: out += 'A'; break;
                case CellRole::Pool: out += 'P'; break;
                case CellRole::Factory: out += 'F'; break;
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace lssim
