#include "lssim/emit.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lssim {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sim_result_json(const SimResult& r) {
    nlohmann::ordered_json j;
    j["format"] = "lssim.run";
    j["format_version"] = 1;
    j["assignment_seed"] = r.assignment_seed;
    j["total_beats"] = r.total_beats;
    j["instructions_executed"] = r.instructions_executed;
    j["cbpi"] = r.instructions_executed > 0
                    ? static_cast<double>(r.total_beats) / r.instructions_executed
                    : 0.0;
    j["stall_beats"] = {{"path", r.stall_beats.path},
                        {"magic", r.stall_beats.magic},
                        {"decoding", r.stall_beats.decoding}};
    j["decoder_peak_backlog"] = r.decoder_peak_backlog;
    j["magic_produced"] = r.magic_produced;
    j["magic_consumed"] = r.magic_consumed;
    if (!r.per_op_l_prime.empty()) {
        j["per_op_effective_lengths"] = r.per_op_l_prime;
        j["per_op_span_cells"] = r.per_op_span;
    }
    return j.dump(2) + "\n";
}

std::string ensemble_csv(const EnsembleResult& ens, long long n_instructions) {
    std::ostringstream out;
    out << "run_index,assignment_seed,total_beats,cbpi,stall_path,stall_magic,stall_decoding,"
           "decoder_peak_backlog,magic_produced,magic_consumed\n";
    for (size_t i = 0; i < ens.runs.size(); ++i) {
        const SimResult& r = ens.runs[i];
        double c = n_instructions > 0
                       ? static_cast<double>(r.total_beats) / static_cast<double>(n_instructions)
                       : 0.0;
        out << i << ',' << r.assignment_seed << ',' << r.total_beats << ',' << format_double(c)
            << ',' << r.stall_beats.path << ',' << r.stall_beats.magic << ','
            << r.stall_beats.decoding << ',' << format_double(r.decoder_peak_backlog) << ','
            << r.magic_produced << ',' << r.magic_consumed << '\n';
    }
    return out.str();
}

std::string stack_csv_header() {
    return "label,layout,pattern,shape,d,n_f,tp_dec,n_assignments,base,magic,path,decoding,total,"
           "full_std_beats,clamp_events\n";
}

std::string stack_csv_row(const RunSpec& spec, const CbpiStack& stack) {
    std::ostringstream out;
    out << spec.label << ',' << to_string(spec.layout) << ',' << to_string(spec.pattern.kind)
        << ',' << (spec.pattern.wide ? "wide" : "square") << ',' << spec.d << ','
        << spec.n_factories << ',' << format_double(spec.tp_dec) << ',' << spec.n_assignments
        << ',' << format_double(stack.base) << ',' << format_double(stack.magic) << ','
        << format_double(stack.path) << ',' << format_double(stack.decoding) << ','
        << format_double(stack.total) << ',' << format_double(stack.full_std_beats) << ','
        << stack.clamp_events << '\n';
    return out.str();
}

std::string hist_csv(const PathLengthHistogram& hist) {
    std::ostringstream out;
    out << "bin,count\n";
    for (size_t b = 0; b < hist.bins.size(); ++b)
        if (hist.bins[b] > 0) out << b << ',' << hist.bins[b] << '\n';
    return out.str();
}

std::string tradeoff_csv(std::span<const TradeoffRow> rows) {
    std::ostringstream out;
    out << "label,layout,pattern,shape,d,qubits_cells_pools,mean_cbpi,std_cbpi,speedup_vs_base,"
           "qubit_delta_vs_base,is_base\n";
    for (const TradeoffRow& row : rows) {
        out << row.in.label << ',' << to_string(row.in.layout) << ',' << to_string(row.in.pattern)
            << ',' << (row.in.wide ? "wide" : "square") << ',' << row.in.d << ','
            << row.in.qubits_cells_pools << ',' << format_double(row.in.mean_cbpi) << ','
            << format_double(row.in.std_cbpi) << ',' << format_double(row.speedup_vs_base) << ','
            << format_double(row.qubit_delta_vs_base) << ',' << (row.in.is_base ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

nlohmann::ordered_json stack_json(const RunSpec& spec, const CbpiStack& stack) {
    nlohmann::ordered_json j;
    j["label"] = spec.label;
    j["layout"] = to_string(spec.layout);
    j["pattern"] = to_string(spec.pattern.kind);
    j["shape"] = spec.pattern.wide ? "wide" : "square";
    j["d"] = spec.d;
    j["n_f"] = spec.n_factories;
    j["tp_dec"] = spec.tp_dec;
    j["n_assignments"] = spec.n_assignments;
    j["base"] = stack.base;
    j["magic"] = stack.magic;
    j["path"] = stack.path;
    j["decoding"] = stack.decoding;
    j["total"] = stack.total;
    j["full_std_beats"] = stack.full_std_beats;
    j["clamp_events"] = stack.clamp_events;
    return j;
}

} // namespace

std::string stack_summary_json(std::span<const RunSpec> specs,
                               std::span<const CbpiStack> stacks) {
    nlohmann::ordered_json j;
    j["format"] = "lssim.stacks";
    j["format_version"] = 1;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (size_t i = 0; i < stacks.size(); ++i) rows.push_back(stack_json(specs[i], stacks[i]));
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string tradeoff_summary_json(std::span<const TradeoffRow> rows) {
    nlohmann::ordered_json j;
    j["format"] = "lssim.tradeoff";
    j["format_version"] = 1;
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const TradeoffRow& row : rows) {
        nlohmann::ordered_json rj;
        rj["label"] = row.in.label;
        rj["layout"] = to_string(row.in.layout);
        rj["pattern"] = to_string(row.in.pattern);
        rj["shape"] = row.in.wide ? "wide" : "square";
        rj["d"] = row.in.d;
        rj["qubits_cells_pools"] = row.in.qubits_cells_pools;
        rj["mean_cbpi"] = row.in.mean_cbpi;
        rj["std_cbpi"] = row.in.std_cbpi;
        rj["speedup_vs_base"] = row.speedup_vs_base;
        rj["qubit_delta_vs_base"] = row.qubit_delta_vs_base;
        rj["is_base"] = row.in.is_base;
        out.push_back(rj);
    }
    j["rows"] = out;
    return j.dump(2) + "\n";
}

} // namespace lssim
