#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lssim/isa.hpp"

namespace lssim {

/// Target op-count fractions. one_qubit + two_qubit must sum to 1; magic is
/// the fraction of magic ops, counted inside two_qubit.
struct MixRatios {
    double one_qubit = 0.0;
    double two_qubit = 0.0;
    double magic = 0.0;
};

/// Op-count characterization of a benchmark circuit family instance.
struct BenchmarkProfile {
    std::string name;
    int n_qubits = 0;
    long long total_ops = 0;
    long long one_qubit_ops = 0;
    long long two_qubit_ops = 0;
    long long magic_ops = 0;

    MixRatios mix() const;
};

/// Bundled QPE SELECT-subroutine profiles (Fermi-Hubbard, Jellium, H4).
const std::vector<BenchmarkProfile>& benchmark_profiles();
const BenchmarkProfile* find_profile(const std::string& name);

/// Generates a SELECT-like program: multi-controlled blocks with realistic
/// dependency fan-in, every magic op emitted as MEAS with MAGIC followed by
/// a conditional OP_S on the same qubit. Deterministic per seed; the
/// resulting program_stats match the requested counts exactly.
///
/// When n_magic_ops > 0 the total op count is derived from mix.magic;
/// n_total overrides it (required when n_magic_ops == 0).
Program generate_select_like(int n_logical, long long n_magic_ops, const MixRatios& mix,
                             std::uint64_t seed, long long n_total = 0);

/// Profile-shaped instance: exact profile counts at scale 1, proportionally
/// scaled counts when n_logical differs from the profile's qubit count.
Program generate_from_profile(const BenchmarkProfile& profile, std::uint64_t seed,
                              std::optional<int> n_logical = std::nullopt);

} // namespace lssim
