#include "lssim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace lssim {

std::vector<std::uint64_t> derive_seeds(std::uint64_t seed, int count) {
    std::vector<std::uint64_t> out(static_cast<size_t>(count));
    std::uint64_t state = seed;
    for (int i = 0; i < count; ++i) {
        // splitmix64
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        out[i] = z ^ (z >> 31);
    }
    return out;
}

std::vector<CellRef> assign_logical_qubits(const Plane& plane, int n_logical,
                                           std::uint64_t seed) {
    const auto& cells = plane.data_cells();
    if (n_logical > static_cast<int>(cells.size()))
        throw ConfigError("more logical qubits than data cells");
    std::vector<int> idx(cells.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::mt19937_64 rng(seed);
    std::vector<CellRef> out(static_cast<size_t>(n_logical));
    for (int i = 0; i < n_logical; ++i) {
        std::uint64_t span = idx.size() - static_cast<size_t>(i);
        int j = i + static_cast<int>(rng() % span);
        std::swap(idx[i], idx[j]);
        out[i] = cells[idx[i]];
    }
    return out;
}

namespace {

struct DecodeTask {
    double remaining = 0.0;
    int reg = kNoRegister;
};

struct PoolState {
    Coord cell;
    int stock = 0;        // states sitting in the pool cell, <= capacity
    long long held = 0;   // produced states waiting in the factory for space
    long long next_production = 0;
};

// Issued-flag counts over magic-op ordinals (Fenwick tree).
class IssuedBelow {
public:
    void reset(int n) { tree_.assign(static_cast<size_t>(n) + 1, 0); }
    void mark(int ordinal) {
        for (int i = ordinal + 1; i < static_cast<int>(tree_.size()); i += i & -i) ++tree_[i];
    }
    int count_below(int ordinal) const { // issued ops with ordinal < given
        int sum = 0;
        for (int i = ordinal; i > 0; i -= i & -i) sum += tree_[i];
        return sum;
    }

private:
    std::vector<int> tree_;
};

class Run {
public:
    Run(const RouteGraph& graph, const Program& program, const SimConfig& cfg,
        std::uint64_t assignment_seed)
        : graph_(graph), plane_(graph.plane()), prog_(program), cfg_(cfg),
          occ_(graph), idle_occ_(graph), seed_(assignment_seed) {}

    SimResult execute() {
        validate();
        assign_qubits();
        init_state();

        const long long watchdog =
            cfg_.watchdog_beats > 0 ? cfg_.watchdog_beats : 10LL * cfg_.factory_period;
        long long beat = 0;
        long long idle_beats = 0;
        while (retired_ < n_inst_) {
            bool progress = process_retirements(beat);
            if (retired_ == n_inst_) {
                result_.total_beats = beat;
                break;
            }
            produce_magic(beat);
            serve_decoder();
            progress |= issue_ready(beat);
            enqueue_nop_load();

            idle_beats = progress ? 0 : idle_beats + 1;
            if (idle_beats > watchdog) throw_watchdog(beat);
            ++beat;
        }

        result_.instructions_executed = n_inst_;
        result_.assignment_seed = seed_;
        return result_;
    }

private:
    void validate() {
        if (cfg_.tp_dec <= 0.0) throw ConfigError("tp_dec must be > 0");
        if (cfg_.factory_period < 1) throw ConfigError("factory_period must be >= 1");
        if (prog_.n_logical_qubits > static_cast<int>(plane_.data_cells().size()))
            throw ConfigError("program uses " + std::to_string(prog_.n_logical_qubits) +
                              " logical qubits but the plane has only " +
                              std::to_string(plane_.data_cells().size()) + " data cells");
        bool any_magic = std::any_of(prog_.instructions.begin(), prog_.instructions.end(),
                                     [](const Instruction& i) { return i.uses_magic(); });
        if (any_magic && plane_.pool_cells().empty())
            throw ConfigError("program consumes magic states but the plane has no pools");
    }

    void assign_qubits() { qubit_cell_ = assign_logical_qubits(plane_, prog_.n_logical_qubits, seed_); }

    void init_state() {
        n_inst_ = static_cast<int>(prog_.instructions.size());
        dag_ = build_dependency_dag(prog_);
        pending_preds_.resize(static_cast<size_t>(n_inst_));
        for (int i = 0; i < n_inst_; ++i) {
            pending_preds_[i] = static_cast<int>(dag_.pred[i].size());
            if (pending_preds_[i] == 0) ready_.insert(i);
        }
        for (size_t i = 0; i < plane_.pool_cells().size(); ++i) {
            PoolState pool;
            pool.cell = plane_.pool_cells()[i];
            pool.next_production = static_cast<long long>(i) % cfg_.factory_period;
            pools_.push_back(pool);
            pool_index_[pool.cell] = static_cast<int>(i);
        }

        magic_ordinal_.assign(static_cast<size_t>(n_inst_), -1);
        n_magic_ops_ = 0;
        for (int i = 0; i < n_inst_; ++i)
            if (prog_.instructions[i].uses_magic()) magic_ordinal_[i] = n_magic_ops_++;
        issued_magic_.reset(n_magic_ops_);

        build_data_node_map();
        weighted_cells_ = plane_.weighted_cells_decoding();
        n_data_cells_ = static_cast<long long>(plane_.data_cells().size());
        if (cfg_.record_per_op) {
            result_.per_op_l_prime.assign(static_cast<size_t>(n_inst_), 0.0);
            result_.per_op_span.assign(static_cast<size_t>(n_inst_), 0);
            result_.per_op_issue_beat.assign(static_cast<size_t>(n_inst_), -1);
        }
        reliable_.clear();
    }

    bool process_retirements(long long beat) {
        auto& events = retire_events_[beat % kEventWindow];
        bool progress = !events.empty();
        for (int i : events) {
            const Instruction& inst = prog_.instructions[i];
            if (cfg_.instant_decoding && inst.dest_register != kNoRegister)
                reliable_.insert(inst.dest_register);
            for (int s : dag_.succ[i])
                if (--pending_preds_[s] == 0) ready_.insert(s);
            ++retired_;
        }
        events.clear();
        auto& releases = release_events_[beat % kEventWindow];
        for (int node : releases) {
            occ_.set(node, false);
            if (data_node_[node]) --busy_data_;
        }
        releases.clear();
        return progress;
    }

    // Factories run on a fixed schedule regardless of downstream pressure;
    // a finished state waits inside the factory until its pool has room.
    // Production is therefore identical across ablation stages, which the
    // monotonicity invariant needs.
    void produce_magic(long long beat) {
        const int capacity = 1 + cfg_.pool_buffer;
        for (PoolState& pool : pools_) {
            if (beat >= pool.next_production) {
                ++pool.held;
                ++result_.magic_produced;
                ++available_states_;
                pool.next_production += cfg_.factory_period;
            }
            while (pool.held > 0 && pool.stock < capacity) {
                --pool.held;
                ++pool.stock;
            }
        }
    }

    void serve_decoder() {
        if (cfg_.instant_decoding) return;
        double budget = cfg_.tp_dec * weighted_cells_;
        auto serve_queue = [&](std::deque<DecodeTask>& q) {
            while (budget > 0.0 && !q.empty()) {
                DecodeTask& head = q.front();
                if (head.remaining <= budget) {
                    budget -= head.remaining;
                    backlog_ -= head.remaining;
                    if (head.reg != kNoRegister) reliable_.insert(head.reg);
                    q.pop_front();
                } else {
                    head.remaining -= budget;
                    backlog_ -= budget;
                    budget = 0.0;
                }
            }
        };
        serve_queue(reg_queue_);
        if (!cfg_.measurement_priority_decoding || reg_queue_.empty()) serve_queue(nop_queue_);
    }

    void enqueue_task(double difficulty, int reg) {
        if (cfg_.instant_decoding || difficulty <= 0.0) return;
        // Strict FIFO puts everything in one queue; under measurement
        // priority, NOP batches go to the low-priority queue instead.
        if (cfg_.measurement_priority_decoding && reg == kNoRegister)
            nop_queue_.push_back({difficulty, reg});
        else
            reg_queue_.push_back({difficulty, reg});
        backlog_ += difficulty;
        result_.decoder_peak_backlog = std::max(result_.decoder_peak_backlog, backlog_);
    }

    bool issue_ready(long long beat) {
        bool issued_any = false;
        for (auto it = ready_.begin(); it != ready_.end();) {
            int i = *it;
            const Instruction& inst = prog_.instructions[i];

            if (inst.condition != kNoRegister && !cfg_.instant_decoding &&
                !reliable_.count(inst.condition)) {
                ++result_.stall_beats.decoding;
                ++it;
                continue;
            }
            // With instant decoding a condition is reliable once its writer
            // retired, which the dependency edge already guarantees.

            if (inst.uses_magic() && !cfg_.infinite_magic) {
                // States are granted to magic ops in program order: every
                // older unissued magic op holds a claim on one state, ready
                // or not. Younger ops proceed only on the surplus; anything
                // less lets them snatch states from delayed older ops and
                // makes added hazards able to speed a run up.
                int ord = magic_ordinal_[i];
                long long reserved = ord - issued_magic_.count_below(ord);
                if (available_states_ - reserved <= 0) {
                    ++result_.stall_beats.magic;
                    ++it;
                    continue;
                }
            }

            RouteResult route = route_instruction(inst);
            if (is_blocked(route)) {
                ++result_.stall_beats.path;
                ++it;
                continue;
            }

            Path& path = std::get<Path>(route);
            issue(i, inst, path, beat);
            if (inst.uses_magic() && !cfg_.infinite_magic) {
                --available_states_;
                issued_magic_.mark(magic_ordinal_[i]);
            }
            issued_any = true;
            it = ready_.erase(it);
        }
        return issued_any;
    }

    RouteResult route_instruction(const Instruction& inst) {
        const Occupancy& occ = cfg_.ignore_path_conflicts ? idle_occ_ : occ_;
        CellRef src = qubit_cell_[inst.q0];
        switch (inst.opcode) {
            case Opcode::InitZ:
            case Opcode::InitX:
            case Opcode::MeasZ:
            case Opcode::MeasX:
                return single_cell_path(graph_, src);
            case Opcode::OpH:
            case Opcode::OpS:
                return find_expansion(graph_, occ, src);
            case Opcode::MeasZZ:
            case Opcode::MeasXX: {
                Basis basis = inst.opcode == Opcode::MeasZZ ? Basis::ZZ : Basis::XX;
                if (inst.uses_magic()) {
                    stocked_pools_.clear();
                    for (const PoolState& p : pools_)
                        if (cfg_.infinite_magic || p.stock > 0) stocked_pools_.push_back(p.cell);
                    return find_magic_path(graph_, occ, src, stocked_pools_, basis);
                }
                return find_merge_path(graph_, occ, src, qubit_cell_[inst.q1], basis);
            }
        }
        throw SimError("unhandled opcode");
    }

    void issue(int i, const Instruction& inst, const Path& path, long long beat) {
        const int dur = duration_beats(inst.opcode);
        retire_events_[(beat + dur) % kEventWindow].push_back(i);

        if (!cfg_.ignore_path_conflicts) {
            auto& releases = release_events_[(beat + dur) % kEventWindow];
            for (const PathNode& n : path.nodes) {
                occ_.set(n.node_id, true);
                if (data_node_[n.node_id]) ++busy_data_;
                releases.push_back(n.node_id);
            }
        }

        if (inst.uses_magic() && !cfg_.infinite_magic) {
            const PathNode& dst = path.nodes.back();
            auto it = pool_index_.find(Coord{dst.row, dst.col});
            if (it == pool_index_.end()) throw SimError("magic path did not end on a pool");
            --pools_[it->second].stock;
            ++result_.magic_consumed;
        }

        double l_prime = static_cast<double>(path.cost_qubits) /
                         (static_cast<double>(plane_.distance().value) * plane_.distance().value);
        enqueue_task(l_prime * dur, inst.dest_register);
        if (cfg_.record_per_op) {
            result_.per_op_l_prime[i] = l_prime;
            result_.per_op_span[i] = path.span_cells;
            result_.per_op_issue_beat[i] = beat;
        }
    }

    void enqueue_nop_load() {
        if (cfg_.instant_decoding) return;
        long long busy = cfg_.ignore_path_conflicts ? 0 : busy_data_;
        long long idle = n_data_cells_ - busy;
        if (idle > 0) enqueue_task(static_cast<double>(idle), kNoRegister);
    }

    void build_data_node_map() {
        data_node_.assign(static_cast<size_t>(graph_.node_count()), 0);
        for (const CellRef& c : plane_.data_cells())
            data_node_[graph_.cell_node(c.layer, c.row, c.col)] = 1;
    }

    [[noreturn]] void throw_watchdog(long long beat) {
        std::ostringstream msg;
        msg << "no instruction issued or retired for the watchdog bound; blocked at beat " << beat
            << ":";
        int listed = 0;
        for (int i : ready_) {
            if (listed++ == 8) {
                msg << " ...";
                break;
            }
            const Instruction& inst = prog_.instructions[i];
            msg << " [" << i << "] " << to_string(inst.opcode) << " q" << inst.q0;
        }
        throw SimError(msg.str());
    }

    static constexpr int kEventWindow = 4; // max duration is 3 beats

    const RouteGraph& graph_;
    const Plane& plane_;
    const Program& prog_;
    const SimConfig& cfg_;

    Occupancy occ_;
    Occupancy idle_occ_;
    std::uint64_t seed_;

    SimResult result_;
    DependencyDag dag_;
    std::vector<CellRef> qubit_cell_;
    std::vector<int> pending_preds_;
    std::set<int> ready_;
    int n_inst_ = 0;
    int retired_ = 0;

    std::vector<PoolState> pools_;
    std::map<Coord, int> pool_index_;
    std::vector<Coord> stocked_pools_;
    std::vector<int> magic_ordinal_;
    int n_magic_ops_ = 0;
    IssuedBelow issued_magic_;
    long long available_states_ = 0; // produced minus consumed, pools + factory holds

    std::deque<DecodeTask> reg_queue_;
    std::deque<DecodeTask> nop_queue_;
    double backlog_ = 0.0;
    std::set<int> reliable_;

    std::vector<char> data_node_;
    long long busy_data_ = 0;
    long long n_data_cells_ = 0;
    double weighted_cells_ = 0.0;

    std::vector<int> retire_events_[kEventWindow];
    std::vector<int> release_events_[kEventWindow];
};

} // namespace

SimResult run_with_graph(const RouteGraph& graph, const Program& program, const SimConfig& cfg,
                         std::uint64_t assignment_seed) {
    if (cfg.n_factories != graph.plane().n_factories() && graph.plane().n_factories() > 0)
        throw ConfigError("cfg.n_factories does not match the plane's factory count");
    return Run(graph, program, cfg, assignment_seed).execute();
}

SimResult run(const Plane& plane, const Program& program, const SimConfig& cfg,
              std::uint64_t assignment_seed) {
    RouteGraph graph(plane);
    return run_with_graph(graph, program, cfg, assignment_seed);
}

EnsembleResult run_ensemble(const Plane& plane, const Program& program, const SimConfig& cfg,
                            int n_workers) {
    if (cfg.n_assignments < 1) throw ConfigError("n_assignments must be >= 1");
    RouteGraph graph(plane);
    auto seeds = derive_seeds(cfg.seed, cfg.n_assignments);

    EnsembleResult ens;
    ens.runs.resize(static_cast<size_t>(cfg.n_assignments));

    if (n_workers <= 1) {
        for (int i = 0; i < cfg.n_assignments; ++i)
            ens.runs[i] = run_with_graph(graph, program, cfg, seeds[i]);
    } else {
        std::vector<std::thread> threads;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < n_workers; ++w) {
            threads.emplace_back([&, w]() {
                try {
                    for (int i = w; i < cfg.n_assignments; i += n_workers)
                        ens.runs[i] = run_with_graph(graph, program, cfg, seeds[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        if (error) std::rethrow_exception(error);
    }

    for (const SimResult& r : ens.runs) ens.sum_beats += r.total_beats;
    double n = static_cast<double>(cfg.n_assignments);
    ens.mean_beats = static_cast<double>(ens.sum_beats) / n;
    double var = 0.0;
    for (const SimResult& r : ens.runs) {
        double d = static_cast<double>(r.total_beats) - ens.mean_beats;
        var += d * d;
    }
    ens.std_beats = std::sqrt(var / n);
    if (!program.instructions.empty())
        ens.mean_cbpi = ens.mean_beats / static_cast<double>(program.instructions.size());
    return ens;
}

} // namespace lssim
