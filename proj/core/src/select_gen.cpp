#include "lssim/select_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lssim {

MixRatios BenchmarkProfile::mix() const {
    MixRatios m;
    m.one_qubit = static_cast<double>(one_qubit_ops) / total_ops;
    m.two_qubit = static_cast<double>(two_qubit_ops) / total_ops;
    m.magic = static_cast<double>(magic_ops) / total_ops;
    return m;
}

const std::vector<BenchmarkProfile>& benchmark_profiles() {
    static const std::vector<BenchmarkProfile> profiles = {
        {"fh-32", 268, 6428, 3460, 2968, 928},
        {"fh-72", 340, 14810, 8348, 6462, 1760},
        {"fh-128", 428, 29000, 16772, 12228, 3040},
        {"fh-200", 532, 50198, 29500, 20698, 4768},
        {"jellium-4", 316, 25448, 14516, 10932, 2848},
        {"h4-8", 244, 6088, 3236, 2852, 928},
        {"h4-18", 382, 105314, 61790, 43524, 10016},
    };
    return profiles;
}

const BenchmarkProfile* find_profile(const std::string& name) {
    for (const auto& p : benchmark_profiles())
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

struct Quotas {
    long long one_q = 0;
    long long two_q_pure = 0;
    long long magic = 0;

    long long remaining() const { return one_q + two_q_pure + magic; }
};

class Builder {
public:
    Builder(int n_logical, Quotas quotas, std::uint64_t seed)
        : n_(n_logical), quotas_(quotas), rng_(seed) {}

    Program build(const std::string& name) {
        Program p;
        p.name = name;
        p.n_logical_qubits = n_;
        // Multi-controlled blocks in SELECT-style circuits: a rotating target
        // accumulates parity checks from a few controls, interleaved with
        // Clifford fixups and gate-teleported T gates on the target.
        while (quotas_.remaining() > 0) {
            int target = next_target_++ % n_;
            emit_block(p, target);
        }
        return p;
    }

private:
    void emit_one_q(Program& p, int q) {
        static const Opcode kOneQ[] = {Opcode::OpH, Opcode::OpS, Opcode::InitZ, Opcode::InitX,
                                       Opcode::MeasZ, Opcode::MeasX};
        Instruction inst;
        inst.opcode = kOneQ[rng_.below(6)];
        inst.q0 = q;
        if (is_measurement(inst.opcode)) inst.dest_register = next_register_++;
        p.instructions.push_back(inst);
        --quotas_.one_q;
    }

    void emit_two_q(Program& p, int a, int b) {
        Instruction inst;
        inst.opcode = rng_.below(2) ? Opcode::MeasZZ : Opcode::MeasXX;
        inst.q0 = a;
        inst.q1 = b;
        inst.dest_register = next_register_++;
        p.instructions.push_back(inst);
        --quotas_.two_q_pure;
    }

    void emit_teleport(Program& p, int q) {
        Instruction meas;
        meas.opcode = Opcode::MeasZZ;
        meas.q0 = q;
        meas.q1 = kMagicOperand;
        meas.dest_register = next_register_++;
        p.instructions.push_back(meas);
        Instruction fixup;
        fixup.opcode = Opcode::OpS;
        fixup.q0 = q;
        fixup.condition = meas.dest_register;
        p.instructions.push_back(fixup);
        --quotas_.magic;
    }

    void emit_block(Program& p, int target) {
        int n_controls = n_ >= 3 ? 2 + rng_.below(std::min(3, n_ - 1)) : 1;
        std::vector<int> controls;
        while (static_cast<int>(controls.size()) < n_controls) {
            int q = rng_.below(n_);
            if (q == target || std::find(controls.begin(), controls.end(), q) != controls.end())
                continue;
            controls.push_back(q);
        }

        for (int q : controls)
            if (quotas_.one_q > 0) emit_one_q(p, q);
        for (int q : controls)
            if (quotas_.two_q_pure > 0) emit_two_q(p, q, target);
        long long teleports = std::min<long long>(quotas_.magic, 1 + rng_.below(4));
        for (long long i = 0; i < teleports; ++i) emit_teleport(p, target);
        if (quotas_.one_q > 0) emit_one_q(p, target);
    }

    int n_;
    Quotas quotas_;
    Rng rng_;
    int next_register_ = 0;
    int next_target_ = 0;
};

Program generate_with_quotas(int n_logical, Quotas quotas, std::uint64_t seed,
                             const std::string& name) {
    if (n_logical < 2) throw ConfigError("generator requires n_logical >= 2");
    return Builder(n_logical, quotas, seed).build(name);
}

} // namespace

Program generate_select_like(int n_logical, long long n_magic_ops, const MixRatios& mix,
                             std::uint64_t seed, long long n_total) {
    if (std::abs(mix.one_qubit + mix.two_qubit - 1.0) > 1e-6)
        throw ConfigError("mix ratios must satisfy one_qubit + two_qubit = 1");
    if (mix.magic > mix.two_qubit + 1e-9)
        throw ConfigError("mix.magic cannot exceed mix.two_qubit (magic ops are two-qubit)");
    if (n_magic_ops < 0) throw ConfigError("n_magic_ops must be >= 0");

    long long total = n_total;
    if (total <= 0) {
        if (n_magic_ops == 0 || mix.magic <= 0.0)
            throw ConfigError("n_total is required when the magic count cannot anchor the size");
        total = std::llround(static_cast<double>(n_magic_ops) / mix.magic);
    }
    Quotas q;
    q.magic = n_magic_ops;
    q.one_q = std::llround(mix.one_qubit * static_cast<double>(total));
    q.two_q_pure = total - q.one_q - n_magic_ops;
    if (q.two_q_pure < 0)
        throw ConfigError("infeasible mix: derived pure two-qubit count is negative");
    return generate_with_quotas(n_logical, q, seed, "select-like");
}

Program generate_from_profile(const BenchmarkProfile& profile, std::uint64_t seed,
                              std::optional<int> n_logical) {
    int n = n_logical.value_or(profile.n_qubits);
    Quotas q;
    if (n == profile.n_qubits) {
        q.one_q = profile.one_qubit_ops;
        q.two_q_pure = profile.two_qubit_ops - profile.magic_ops;
        q.magic = profile.magic_ops;
    } else {
        double scale = static_cast<double>(n) / profile.n_qubits;
        q.one_q = std::llround(static_cast<double>(profile.one_qubit_ops) * scale);
        q.two_q_pure =
            std::llround(static_cast<double>(profile.two_qubit_ops - profile.magic_ops) * scale);
        q.magic = std::llround(static_cast<double>(profile.magic_ops) * scale);
    }
    return generate_with_quotas(n, q, seed, profile.name);
}

} // namespace lssim
