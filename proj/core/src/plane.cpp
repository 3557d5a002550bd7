#include "lssim/plane.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "lssim/route.hpp"

namespace lssim {

namespace {

void demote_excess_data(RoleGrid& g, int n_target) {
    int have = g.count(CellRole::Data);
    for (int r = g.rows() - 1; r >= 0 && have > n_target; --r) {
        for (int c = g.cols() - 1; c >= 0 && have > n_target; --c) {
            if (g.at(r, c) == CellRole::Data) {
                g.set(r, c, CellRole::Ancilla);
                --have;
            }
        }
    }
}

void extend_rows_with_ancilla(RoleGrid& g, int target_rows) {
    if (g.rows() >= target_rows) return;
    RoleGrid out(target_rows, g.cols(), CellRole::Ancilla);
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
            out.set(r, c, g.at(r, c));
    g = out;
}

} // namespace

void Plane::attach_fragments() {
    cell_frag_.assign(static_cast<size_t>(rows_) * cols_, 0);
    hgap_frag_.assign(static_cast<size_t>(rows_) * cols_, 0);
    n_cell_frags_ = 0;
    n_hgap_frags_ = 0;
    if (layout_ != LayoutKind::Bypass) return;
    for (int r = 0; r < rows_; ++r) {
        for (int c = region_col0_; c < cols_; ++c) {
            cell_frag_[static_cast<size_t>(r) * cols_ + c] = 1;
            ++n_cell_frags_;
            if (c + 1 < cols_) {
                hgap_frag_[static_cast<size_t>(r) * cols_ + c] = 1;
                ++n_hgap_frags_;
            }
        }
    }
}

void Plane::collect_cells() {
    data_cells_.clear();
    for (int l = 0; l < n_layers(); ++l)
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (cell_exists(l, r, c) && role(l, r, c) == CellRole::Data)
                    data_cells_.push_back({l, r, c});

    pool_cells_.clear();
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (role(0, r, c) == CellRole::Pool) pool_cells_.push_back({r, c});
}

double Plane::weighted_cells_decoding() const {
    double w = 0.0;
    for (int l = 0; l < n_layers(); ++l)
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (cell_exists(l, r, c) && role(l, r, c) != CellRole::Factory) w += 1.0;
    w += static_cast<double>(bypass_fragment_count()) / d_.value;
    return w;
}

Plane Plane::from_grid(LayoutKind layout, Distance d, const RoleGrid& grid) {
    Plane p;
    p.layout_ = layout;
    p.d_ = d;
    p.rows_ = grid.rows();
    p.cols_ = grid.cols();
    p.region_col0_ = 0;
    p.n_factories_ = grid.count(CellRole::Pool); // one factory feeds each pool
    p.layers_.push_back(grid);
    if (layout == LayoutKind::TwoLayerDD) {
        p.layers_.push_back(grid);
    } else if (layout == LayoutKind::TwoLayerDP) {
        p.layers_.emplace_back(grid.rows(), grid.cols(), CellRole::Ancilla);
    }
    p.attach_fragments();
    p.collect_cells();
    return p;
}

Plane build_floor_plan(LayoutKind layout, ArrangementPattern pattern, int n_data_cells,
                       int n_factories, Distance d) {
    if (n_factories < 1) throw ConfigError("n_factories must be >= 1");
    if (n_data_cells < 1) throw ConfigError("n_data_cells must be >= 1");
    if (pattern.wide && layout != LayoutKind::Bypass)
        throw ConfigError("wide arrangement shape requires the bypass layout");

    if (pattern.wide && pattern.wide_height == 0)
        pattern.wide_height = optimize_wide_height(n_data_cells, pattern.kind, n_factories, d);

    RoleGrid region0;
    RoleGrid region1;
    bool two_layers = layout == LayoutKind::TwoLayerDD || layout == LayoutKind::TwoLayerDP;

    if (layout == LayoutKind::TwoLayerDD) {
        int n0 = (n_data_cells + 1) / 2;
        region0 = generate_arrangement(pattern, n0);
        region1 = region0;
        demote_excess_data(region1, n_data_cells - n0);
    } else {
        region0 = generate_arrangement(pattern, n_data_cells);
        if (layout == LayoutKind::TwoLayerDP)
            region1 = RoleGrid(region0.rows(), region0.cols(), CellRole::Ancilla);
    }

    extend_rows_with_ancilla(region0, n_factories);
    if (two_layers) extend_rows_with_ancilla(region1, n_factories);

    Plane p;
    p.layout_ = layout;
    p.d_ = d;
    p.pattern_ = pattern;
    p.n_factories_ = n_factories;
    p.rows_ = region0.rows();
    p.cols_ = region0.cols() + 2;
    p.region_col0_ = 2;

    RoleGrid layer0(p.rows_, p.cols_, CellRole::Ancilla);
    for (int r = 0; r < p.rows_; ++r) {
        layer0.set(r, 0, CellRole::Factory);
        if (r < n_factories) layer0.set(r, 1, CellRole::Pool);
        for (int c = 0; c < region0.cols(); ++c) layer0.set(r, c + 2, region0.at(r, c));
    }
    p.layers_.push_back(std::move(layer0));

    if (two_layers) {
        RoleGrid layer1(p.rows_, p.cols_, CellRole::Factory); // cols < region_col0 do not exist
        for (int r = 0; r < p.rows_; ++r)
            for (int c = 0; c < region1.cols(); ++c) layer1.set(r, c + 2, region1.at(r, c));
        p.layers_.push_back(std::move(layer1));
    }

    p.attach_fragments();
    p.collect_cells();
    return p;
}

int optimize_wide_height(int n_data_cells, PatternKind kind, int n_factories, Distance d) {
    if (kind != PatternKind::Dense50)
        throw ConfigError("wide arrangement is only defined for the dense50 pattern");
    if (n_data_cells < 2) return std::max(1, n_factories);

    int square_h = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * n_data_cells))));
    int best_h = 1;
    double best_avg = -1.0;
    for (int h = 1; h <= square_h; ++h) {
        ArrangementPattern pat{kind, true, h};
        Plane plane = build_floor_plan(LayoutKind::Bypass, pat, n_data_cells, n_factories, d);
        double avg = avg_pairwise_effective_length(plane);
        if (best_avg < 0.0 || avg < best_avg) {
            best_avg = avg;
            best_h = h;
        }
    }
    return std::max(best_h, n_factories);
}

namespace {

const char* part_of(const Plane& p, int layer, int r, int c) {
    (void)layer;
    if (p.region_col0() > 0) {
        if (c == 0) return "factories";
        if (c == 1) return "pools";
        return "cells";
    }
    switch (p.role(0, r, c)) {
        case CellRole::Factory: return "factories";
        case CellRole::Pool: return "pools";
        default: return "cells";
    }
}

} // namespace

ResourceCount count_physical_qubits(const Plane& plane) {
    const int d = plane.distance().value;
    const long long cell_data = static_cast<long long>(d) * d;
    const long long cell_anc = static_cast<long long>(d + 1) * (d + 1);

    ResourceCount rc;
    rc.parts = {{"factories"}, {"pools"}, {"cells"}};
    auto part = [&](const char* name) -> PartQubits& {
        for (auto& p : rc.parts)
            if (p.part == name) return p;
        return rc.parts.front();
    };

    for (int l = 0; l < plane.n_layers(); ++l) {
        for (int r = 0; r < plane.rows(); ++r) {
            for (int c = 0; c < plane.cols(); ++c) {
                if (!plane.cell_exists(l, r, c)) continue;
                PartQubits& pq = part(part_of(plane, l, r, c));
                pq.data_qubits += cell_data;
                pq.ancilla_qubits += cell_anc;
                pq.weighted_cells += 1.0;
                // Interior gap seams, d data qubits each, assigned to the
                // left/top cell's part; perimeter gaps are excluded.
                if (plane.cell_exists(l, r, c + 1)) pq.data_qubits += d;
                if (plane.cell_exists(l, r + 1, c)) pq.data_qubits += d;
            }
        }
    }

    if (plane.layout() == LayoutKind::Bypass) {
        for (int r = 0; r < plane.rows(); ++r) {
            for (int c = 0; c < plane.cols(); ++c) {
                if (plane.has_cell_frag(r, c)) {
                    PartQubits& pq = part(part_of(plane, 0, r, c));
                    pq.data_qubits += d; // d x 1 fragment
                    pq.weighted_cells += 1.0 / d;
                }
                if (plane.has_hgap_frag(r, c)) {
                    PartQubits& pq = part(part_of(plane, 0, r, c));
                    pq.data_qubits += d; // gap fragment: d data + 2d ancilla
                    pq.ancilla_qubits += 2LL * d;
                    pq.weighted_cells += 1.0 / d;
                }
            }
        }
    }

    for (const auto& pq : rc.parts) {
        rc.data_qubits += pq.data_qubits;
        rc.ancilla_qubits += pq.ancilla_qubits;
        rc.total_cells_weighted += pq.weighted_cells;
        if (pq.part != "factories")
            rc.cells_pools_qubits += pq.data_qubits + pq.ancilla_qubits;
    }
    return rc;
}

std::string Plane::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "lssim.plane";
    j["format_version"] = 1;
    j["layout"] = to_string(layout_);
    j["distance"] = d_.value;
    nlohmann::ordered_json pat;
    pat["kind"] = to_string(pattern_.kind);
    pat["shape"] = pattern_.wide ? "wide" : "square";
    if (pattern_.wide) pat["height"] = pattern_.wide_height;
    j["pattern"] = pat;
    j["n_factories"] = n_factories_;
    j["rows"] = rows_;
    j["cols"] = cols_;

    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (int l = 0; l < n_layers(); ++l) {
        nlohmann::ordered_json roles = nlohmann::ordered_json::array();
        for (int r = 0; r < rows_; ++r) {
            std::string row;
            for (int c = 0; c < cols_; ++c) {
                if (!cell_exists(l, r, c)) {
                    row += '.';
                    continue;
                }
                switch (role(l, r, c)) {
                    case CellRole::Data: row += 'D'; break;
                    case CellRole::Ancilla: row += 'A'; break;
                    case CellRole::Pool: row += 'P'; break;
                    case CellRole::Factory: row += 'F'; break;
                }
            }
            roles.push_back(row);
        }
        layers.push_back(nlohmann::ordered_json{{"roles", roles}});
    }
    j["layers"] = layers;

    if (layout_ == LayoutKind::Bypass) {
        auto flags = [&](const std::vector<char>& v, bool gap) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (int r = 0; r < rows_; ++r) {
                std::string row;
                int w = gap ? cols_ - 1 : cols_;
                for (int c = 0; c < w; ++c)
                    row += v[static_cast<size_t>(r) * cols_ + c] ? '1' : '0';
                rows.push_back(row);
            }
            return rows;
        };
        j["fragments"] = {{"cells", flags(cell_frag_, false)}, {"hgaps", flags(hgap_frag_, true)}};
    }

    nlohmann::ordered_json parts;
    if (region_col0_ > 0) {
        parts["factories"] = {{"row0", 0}, {"col0", 0}, {"rows", rows_}, {"cols", 1}};
        parts["pools"] = {{"row0", 0}, {"col0", 1}, {"rows", n_factories_}, {"cols", 1}};
        parts["cells"] = {{"row0", 0}, {"col0", region_col0_}, {"rows", rows_},
                          {"cols", cols_ - region_col0_}};
    } else {
        parts["cells"] = {{"row0", 0}, {"col0", 0}, {"rows", rows_}, {"cols", cols_}};
    }
    j["floor_parts"] = parts;

    return j.dump(2) + "\n";
}

} // namespace lssim
