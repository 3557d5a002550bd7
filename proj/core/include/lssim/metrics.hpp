#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lssim/engine.hpp"

namespace lssim {

/// Code beats per instruction for one run.
double cbpi(const SimResult& result);

/// Four-component CBPI decomposition for one configuration. Components are
/// clamped at zero (clamp_events counts inversions) and total is their sum,
/// so base + magic + path + decoding == total holds exactly by construction.
struct CbpiStack {
    double base = 0.0;
    double magic = 0.0;
    double path = 0.0;
    double decoding = 0.0;
    double total = 0.0;
    int clamp_events = 0;
    /// Exact per-stage beat sums and per-run beats, staged as
    /// base / +magic / +magic+path / full. Inversion-free stacks satisfy
    /// stage_sum_beats[0] + component sums == stage_sum_beats[3] exactly.
    std::array<long long, 4> stage_sum_beats{};
    std::array<std::vector<long long>, 4> stage_beats;
    double full_std_beats = 0.0;
};

/// Runs the four ablation-staged ensembles (Base, +magic, +magic+path, full)
/// and stacks the successive differences. Ablation flags already set in cfg
/// stay on in every stage, zeroing the matching component.
CbpiStack cbpi_stack(const Plane& plane, const Program& program, const SimConfig& cfg,
                     int n_workers = 1);

/// Histogram of per-op effective lengths (bin width 1, bin k covers
/// [k, k+1)) over path-carrying ops (allocated span >= 2 cells).
struct PathLengthHistogram {
    std::vector<long long> bins;
    long long op_count = 0;         // path-carrying ops binned
    double total_l_prime = 0.0;     // over path-carrying ops
    double total_l_prime_all = 0.0; // over every executed op
};

PathLengthHistogram path_length_histogram(std::span<const SimResult> results);

/// Idle-plane routing statistics for a program under one assignment: each op
/// takes its minimum-L' path with no contention. Used for cross-layout
/// total-L' ratios without ensemble runs.
struct RoutingSummary {
    double total_l_prime = 0.0;     // path-carrying ops
    double total_l_prime_all = 0.0; // every op
    PathLengthHistogram hist;
};

RoutingSummary routing_summary(const Plane& plane, const Program& program,
                               std::uint64_t assignment_seed);

struct LerEstimate {
    double p = 0.0;
    double p_th = 0.0;
    int d = 0;
    double total_lprime_ratio = 0.0;
    int delta_d = 0; // even, >= 0, keeps d - delta_d >= 3
};

/// Converts a total-L' reduction ratio into a code-distance reduction: each
/// two steps of d scale the logical error rate by p/p_th, so a 1/X error
/// budget buys floor(log(X) / log(p_th/p)) steps. Conservative (floor).
LerEstimate suggest_distance_reduction(double total_lprime_ratio, double p, double p_th,
                                       Distance d);

/// One evaluated configuration for the resource/performance tradeoff table.
struct TradeoffInput {
    std::string label;
    LayoutKind layout = LayoutKind::OneLayerD;
    PatternKind pattern = PatternKind::Dense44;
    bool wide = false;
    int d = 0;
    long long qubits_cells_pools = 0;
    double mean_cbpi = 0.0;
    double std_cbpi = 0.0;
    bool is_base = false;
};

struct TradeoffRow {
    TradeoffInput in;
    double speedup_vs_base = 0.0;
    double qubit_delta_vs_base = 0.0; // fractional change, negative = fewer
};

/// Pure post-processing: requires exactly one base row; preserves input order.
std::vector<TradeoffRow> tradeoff_table(std::span<const TradeoffInput> inputs);

} // namespace lssim
