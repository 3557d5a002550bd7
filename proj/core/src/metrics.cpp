#include "lssim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lssim/route.hpp"

namespace lssim {

double cbpi(const SimResult& result) {
    if (result.instructions_executed <= 0) throw ConfigError("cbpi of an empty run");
    return static_cast<double>(result.total_beats) /
           static_cast<double>(result.instructions_executed);
}

CbpiStack cbpi_stack(const Plane& plane, const Program& program, const SimConfig& cfg,
                     int n_workers) {
    if (program.instructions.empty()) throw ConfigError("cbpi_stack of an empty program");

    SimConfig stage[4] = {cfg, cfg, cfg, cfg};
    stage[0].infinite_magic = true;
    stage[0].ignore_path_conflicts = true;
    stage[0].instant_decoding = true;
    stage[1].ignore_path_conflicts = true;
    stage[1].instant_decoding = true;
    stage[2].instant_decoding = true;
    // stage[3] is the configured model.

    CbpiStack out;
    for (int s = 0; s < 4; ++s) {
        stage[s].record_per_op = s == 3 && cfg.record_per_op;
        EnsembleResult ens = run_ensemble(plane, program, stage[s], n_workers);
        out.stage_sum_beats[s] = ens.sum_beats;
        out.stage_beats[s].reserve(ens.runs.size());
        for (const SimResult& r : ens.runs) out.stage_beats[s].push_back(r.total_beats);
        if (s == 3) out.full_std_beats = ens.std_beats;
    }

    const double denom = static_cast<double>(cfg.n_assignments) *
                         static_cast<double>(program.instructions.size());
    auto component = [&](long long hi, long long lo) {
        long long diff = hi - lo;
        if (diff < 0) {
            ++out.clamp_events;
            diff = 0;
        }
        return static_cast<double>(diff) / denom;
    };
    out.base = static_cast<double>(out.stage_sum_beats[0]) / denom;
    out.magic = component(out.stage_sum_beats[1], out.stage_sum_beats[0]);
    out.path = component(out.stage_sum_beats[2], out.stage_sum_beats[1]);
    out.decoding = component(out.stage_sum_beats[3], out.stage_sum_beats[2]);
    out.total = out.base + out.magic + out.path + out.decoding;
    return out;
}

namespace {

void bin_op(PathLengthHistogram& h, double l_prime, int span) {
    h.total_l_prime_all += l_prime;
    if (span < 2) return;
    int bin = static_cast<int>(std::floor(l_prime));
    if (bin >= static_cast<int>(h.bins.size())) h.bins.resize(static_cast<size_t>(bin) + 1, 0);
    ++h.bins[bin];
    ++h.op_count;
    h.total_l_prime += l_prime;
}

} // namespace

PathLengthHistogram path_length_histogram(std::span<const SimResult> results) {
    if (results.empty()) throw ConfigError("path_length_histogram of no results");
    PathLengthHistogram h;
    for (const SimResult& r : results) {
        if (r.per_op_l_prime.size() != r.per_op_span.size() || r.per_op_l_prime.empty())
            throw ConfigError("results lack per-op records (record_per_op was off?)");
        for (size_t i = 0; i < r.per_op_l_prime.size(); ++i)
            bin_op(h, r.per_op_l_prime[i], r.per_op_span[i]);
    }
    return h;
}

RoutingSummary routing_summary(const Plane& plane, const Program& program,
                               std::uint64_t assignment_seed) {
    RouteGraph graph(plane);
    Occupancy idle(graph);
    const double dd = static_cast<double>(plane.distance().value) * plane.distance().value;
    auto qubit_cell = assign_logical_qubits(plane, program.n_logical_qubits, assignment_seed);

    // Route endpoints repeat heavily, so cache one single-source search per
    // (source qubit, basis) and read every op off the distance tables.
    std::vector<CellRef> targets;
    for (const CellRef& c : qubit_cell) targets.push_back(c);
    size_t n_q = qubit_cell.size();
    for (const Coord& p : plane.pool_cells()) targets.push_back({0, p.row, p.col});

    std::map<std::pair<int, int>, std::vector<long long>> cache;
    auto costs_from = [&](int qubit, Basis basis) -> const std::vector<long long>& {
        auto key = std::make_pair(qubit, static_cast<int>(basis));
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto costs = min_costs_to_cells(graph, idle, qubit_cell[qubit], targets, basis);
        return cache.emplace(key, std::move(costs)).first->second;
    };

    RoutingSummary rs;
    const int d = plane.distance().value;
    for (const Instruction& inst : program.instructions) {
        double l_prime = 0.0;
        int span = 1;
        switch (inst.opcode) {
            case Opcode::InitZ:
            case Opcode::InitX:
            case Opcode::MeasZ:
            case Opcode::MeasX:
                l_prime = 1.0;
                span = 1;
                break;
            case Opcode::OpH:
            case Opcode::OpS:
                l_prime = 2.0 + 1.0 / d;
                span = 2;
                break;
            case Opcode::MeasZZ:
            case Opcode::MeasXX: {
                Basis basis = inst.opcode == Opcode::MeasZZ ? Basis::ZZ : Basis::XX;
                const auto& costs = costs_from(inst.q0, basis);
                long long best = -1;
                if (inst.uses_magic()) {
                    for (size_t t = n_q; t < targets.size(); ++t)
                        if (costs[t] >= 0 && (best < 0 || costs[t] < best)) best = costs[t];
                } else {
                    best = costs[static_cast<size_t>(inst.q1)];
                }
                if (best < 0) throw SimError("program operand pair is unroutable on this plane");
                l_prime = static_cast<double>(best) / dd;
                span = 2; // exact span unused here; >= 2 marks a path-carrying op
                break;
            }
        }
        bin_op(rs.hist, l_prime, span);
    }
    rs.total_l_prime = rs.hist.total_l_prime;
    rs.total_l_prime_all = rs.hist.total_l_prime_all;
    return rs;
}

LerEstimate suggest_distance_reduction(double total_lprime_ratio, double p, double p_th,
                                       Distance d) {
    if (p <= 0.0 || p_th <= 0.0 || p >= p_th)
        throw ConfigError("suggest_distance_reduction requires 0 < p < p_th");
    if (total_lprime_ratio <= 0.0) throw ConfigError("total_lprime_ratio must be positive");

    LerEstimate est;
    est.p = p;
    est.p_th = p_th;
    est.d = d.value;
    est.total_lprime_ratio = total_lprime_ratio;
    if (total_lprime_ratio >= 1.0) {
        est.delta_d = 0;
        return est;
    }
    int steps = static_cast<int>(std::floor(std::log(total_lprime_ratio) / std::log(p / p_th)));
    int delta = 2 * std::max(0, steps);
    delta = std::min(delta, d.value - 3);
    if (delta % 2 != 0) --delta; // preserve odd code distance
    est.delta_d = std::max(0, delta);
    return est;
}

std::vector<TradeoffRow> tradeoff_table(std::span<const TradeoffInput> inputs) {
    const TradeoffInput* base = nullptr;
    for (const TradeoffInput& in : inputs) {
        if (!in.is_base) continue;
        if (base) throw ConfigError("tradeoff_table requires exactly one base row, found several");
        base = &in;
    }
    if (!base) throw ConfigError("tradeoff_table requires a base configuration row");

    std::vector<TradeoffRow> rows;
    rows.reserve(inputs.size());
    for (const TradeoffInput& in : inputs) {
        TradeoffRow row;
        row.in = in;
        row.speedup_vs_base = base->mean_cbpi / in.mean_cbpi;
        row.qubit_delta_vs_base =
            static_cast<double>(in.qubits_cells_pools - base->qubits_cells_pools) /
            static_cast<double>(base->qubits_cells_pools);
        rows.push_back(row);
    }
    return rows;
}

} // namespace lssim
