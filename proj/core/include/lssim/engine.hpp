#pragma once

#include <cstdint>
#include <vector>

#include "lssim/isa.hpp"
#include "lssim/plane.hpp"
#include "lssim/route.hpp"

namespace lssim {

struct SimConfig {
    int n_factories = 12;
    int factory_period = 15; // beats per magic state per factory
    double tp_dec = 0.45;    // decoder capacity per beat per weighted cell

    bool infinite_magic = false;
    bool ignore_path_conflicts = false;
    bool instant_decoding = false;

    int n_assignments = 1000;
    std::uint64_t seed = 0;

    /// Pool capacity beyond the one ready state.
    int pool_buffer = 2;
    /// Serve register-gating decode tasks ahead of the NOP backlog instead of
    /// strict FIFO (sensitivity alternative).
    bool measurement_priority_decoding = false;
    /// Abort after this many beats without an issue or retirement
    /// (0 = 10 * factory_period).
    long long watchdog_beats = 0;
    /// Keep per-op path statistics in each SimResult.
    bool record_per_op = true;
};

struct HazardBeats {
    long long path = 0;
    long long magic = 0;
    long long decoding = 0;
};

struct SimResult {
    long long total_beats = 0;
    long long instructions_executed = 0;
    HazardBeats stall_beats;
    /// Effective length, allocated span, and issue beat per instruction
    /// (empty unless record_per_op).
    std::vector<double> per_op_l_prime;
    std::vector<int> per_op_span;
    std::vector<long long> per_op_issue_beat;
    double decoder_peak_backlog = 0.0;
    long long magic_produced = 0;
    long long magic_consumed = 0;
    std::uint64_t assignment_seed = 0;
};

/// One beat-stepped simulation with the given logical-qubit assignment seed.
/// Per beat: retirements, factory production, decoder service, greedy
/// in-program-order issue of ready instructions against live occupancy, and
/// idle-cell NOP decoding load.
SimResult run(const Plane& plane, const Program& program, const SimConfig& cfg,
              std::uint64_t assignment_seed);

/// Same, against a prebuilt route graph (shared across ensemble runs).
SimResult run_with_graph(const RouteGraph& graph, const Program& program, const SimConfig& cfg,
                         std::uint64_t assignment_seed);

struct EnsembleResult {
    double mean_beats = 0.0;
    double std_beats = 0.0; // population std over runs
    double mean_cbpi = 0.0;
    long long sum_beats = 0; // exact integer sum, for stack algebra
    std::vector<SimResult> runs;
};

/// cfg.n_assignments independent runs with seeds derived from cfg.seed.
/// Deterministic regardless of n_workers; results are ordered by run index.
EnsembleResult run_ensemble(const Plane& plane, const Program& program, const SimConfig& cfg,
                            int n_workers = 1);

/// Derived per-run assignment seeds (splitmix64 stream over cfg.seed).
std::vector<std::uint64_t> derive_seeds(std::uint64_t seed, int count);

/// The uniform logical-qubit -> data-cell assignment used by run().
std::vector<CellRef> assign_logical_qubits(const Plane& plane, int n_logical,
                                           std::uint64_t seed);

} // namespace lssim
