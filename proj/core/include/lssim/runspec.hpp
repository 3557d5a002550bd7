#pragma once

#include <cstdint>
#include <string>

#include "lssim/engine.hpp"
#include "lssim/plane.hpp"
#include "lssim/select_gen.hpp"

namespace lssim {

/// Program source: either a trace file or generator parameters.
struct ProgramSource {
    std::string trace_path;

    std::string profile; // bundled benchmark profile name
    int n_logical = 0;   // overrides the profile size when > 0

    // Explicit generator parameters (used when no profile is given).
    long long n_magic = 0;
    long long n_total = 0;
    MixRatios mix{};
    std::uint64_t gen_seed = 0;

    bool from_trace() const { return !trace_path.empty(); }
};

/// One fully-validated simulation configuration, the unit of CLI work.
struct RunSpec {
    std::string label;
    LayoutKind layout = LayoutKind::OneLayerD;
    ArrangementPattern pattern{PatternKind::Dense50, false, 0};
    int d = 25;
    int n_factories = 12;
    double tp_dec = 0.45;
    int factory_period = 15;
    bool infinite_magic = false;
    bool ignore_path_conflicts = false;
    bool instant_decoding = false;
    bool measurement_priority_decoding = false;
    int n_assignments = 1000;
    std::uint64_t seed = 0;
    int pool_buffer = 2;
    ProgramSource program;

    /// Parses and validates a JSON document; error messages name the field.
    static RunSpec from_json_text(const std::string& text);

    SimConfig sim_config() const;
    Program load_program() const;
    Plane build_plane(int n_data_cells) const;
};

} // namespace lssim
