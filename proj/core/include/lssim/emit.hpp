#pragma once

#include <span>
#include <string>

#include "lssim/engine.hpp"
#include "lssim/metrics.hpp"
#include "lssim/runspec.hpp"

namespace lssim {

/// Deterministic text emitters for the CLI output files. All columns are
/// documented in docs/formats.md; field order is part of the format version.

std::string sim_result_json(const SimResult& result);
std::string ensemble_csv(const EnsembleResult& ensemble, long long n_instructions);

std::string stack_csv_header();
std::string stack_csv_row(const RunSpec& spec, const CbpiStack& stack);

std::string hist_csv(const PathLengthHistogram& hist);

std::string tradeoff_csv(std::span<const TradeoffRow> rows);

/// Summary JSON mirroring the CSV tables of one command invocation.
std::string stack_summary_json(std::span<const RunSpec> specs,
                               std::span<const CbpiStack> stacks);
std::string tradeoff_summary_json(std::span<const TradeoffRow> rows);

std::string format_double(double v);

} // namespace lssim
