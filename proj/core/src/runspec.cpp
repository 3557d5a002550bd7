#include "lssim/runspec.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lssim {

namespace {

using nlohmann::json;

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

RunSpec RunSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    RunSpec spec;
    spec.label = field_or<std::string>(j, "label", "");
    spec.layout = layout_from_string(field_or<std::string>(j, "layout", "1L-D"));
    spec.pattern.kind = pattern_from_string(field_or<std::string>(j, "pattern", "dense50"));
    std::string shape = field_or<std::string>(j, "shape", "square");
    if (shape == "wide")
        spec.pattern.wide = true;
    else if (shape != "square")
        throw ConfigError("field 'shape' must be \"square\" or \"wide\", got \"" + shape + "\"");
    spec.pattern.wide_height = field_or<int>(j, "wide_height", 0);

    spec.d = field_or<int>(j, "d", 25);
    if (spec.d < 3 || spec.d % 2 == 0)
        throw ConfigError("field 'd' must be an odd integer >= 3");
    spec.n_factories = field_or<int>(j, "n_f", 12);
    if (spec.n_factories < 1) throw ConfigError("field 'n_f' must be >= 1");
    spec.tp_dec = field_or<double>(j, "tp_dec", 0.45);
    if (spec.tp_dec <= 0.0) throw ConfigError("field 'tp_dec' must be > 0");
    spec.factory_period = field_or<int>(j, "factory_period", 15);
    if (spec.factory_period < 1) throw ConfigError("field 'factory_period' must be >= 1");

    if (j.contains("ablations")) {
        const json& a = j.at("ablations");
        if (!a.is_object()) throw ConfigError("field 'ablations' must be an object");
        spec.infinite_magic = field_or<bool>(a, "infinite_magic", false);
        spec.ignore_path_conflicts = field_or<bool>(a, "ignore_path_conflicts", false);
        spec.instant_decoding = field_or<bool>(a, "instant_decoding", false);
    }
    spec.measurement_priority_decoding = field_or<bool>(j, "measurement_priority_decoding", false);
    spec.n_assignments = field_or<int>(j, "n_assignments", 1000);
    if (spec.n_assignments < 1) throw ConfigError("field 'n_assignments' must be >= 1");
    spec.seed = field_or<std::uint64_t>(j, "seed", 0);
    spec.pool_buffer = field_or<int>(j, "pool_buffer", 2);
    if (spec.pool_buffer < 0) throw ConfigError("field 'pool_buffer' must be >= 0");

    if (!j.contains("program")) throw ConfigError("field 'program' is required");
    const json& p = j.at("program");
    if (!p.is_object()) throw ConfigError("field 'program' must be an object");
    spec.program.trace_path = field_or<std::string>(p, "trace", "");
    spec.program.profile = field_or<std::string>(p, "profile", "");
    spec.program.n_logical = field_or<int>(p, "n_logical", 0);
    spec.program.n_magic = field_or<long long>(p, "n_magic", 0);
    spec.program.n_total = field_or<long long>(p, "n_total", 0);
    spec.program.gen_seed = field_or<std::uint64_t>(p, "seed", 0);
    if (p.contains("mix")) {
        const json& m = p.at("mix");
        spec.program.mix.one_qubit = field_or<double>(m, "one_qubit", 0.0);
        spec.program.mix.two_qubit = field_or<double>(m, "two_qubit", 0.0);
        spec.program.mix.magic = field_or<double>(m, "magic", 0.0);
    }
    if (spec.program.trace_path.empty() && spec.program.profile.empty() &&
        spec.program.n_total == 0 && spec.program.n_magic == 0)
        throw ConfigError("field 'program' needs a 'trace', a 'profile', or generator parameters");
    if (!spec.program.profile.empty() && !find_profile(spec.program.profile)) {
        std::string names;
        for (const auto& prof : benchmark_profiles()) names += " " + prof.name;
        throw ConfigError("field 'program.profile' unknown: \"" + spec.program.profile +
                          "\" (available:" + names + ")");
    }
    return spec;
}

SimConfig RunSpec::sim_config() const {
    SimConfig cfg;
    cfg.n_factories = n_factories;
    cfg.factory_period = factory_period;
    cfg.tp_dec = tp_dec;
    cfg.infinite_magic = infinite_magic;
    cfg.ignore_path_conflicts = ignore_path_conflicts;
    cfg.instant_decoding = instant_decoding;
    cfg.measurement_priority_decoding = measurement_priority_decoding;
    cfg.n_assignments = n_assignments;
    cfg.seed = seed;
    cfg.pool_buffer = pool_buffer;
    return cfg;
}

Program RunSpec::load_program() const {
    if (program.from_trace()) {
        std::ifstream in(program.trace_path);
        if (!in) throw ConfigError("cannot open trace file '" + program.trace_path + "'");
        std::ostringstream body;
        body << in.rdbuf();
        return parse_program(body.str());
    }
    if (!program.profile.empty()) {
        const BenchmarkProfile* prof = find_profile(program.profile);
        std::optional<int> n;
        if (program.n_logical > 0) n = program.n_logical;
        return generate_from_profile(*prof, program.gen_seed, n);
    }
    if (program.n_logical < 2)
        throw ConfigError("field 'program.n_logical' must be >= 2 for generated programs");
    return generate_select_like(program.n_logical, program.n_magic, program.mix,
                                program.gen_seed, program.n_total);
}

Plane RunSpec::build_plane(int n_data_cells) const {
    return build_floor_plan(layout, pattern, n_data_cells, n_factories, Distance(d));
}

} // namespace lssim
