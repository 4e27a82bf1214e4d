#include "spdc/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "spdc/cli/csv.hpp"

namespace spdc::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse integer '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse unsigned integer '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

SpectrumGrid RunConfig::grid() const {
    if (grid_explicit) return SpectrumGrid::uniform(grid_min, grid_max, grid_points);
    return SpectrumGrid::default_for(spec.mean_coupling);
}

EnsembleOptions RunConfig::ensemble_options() const {
    EnsembleOptions opt;
    opt.threads = threads;
    opt.diagonal_disorder = diagonal_disorder;
    return opt;
}

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        if (kv.count(key))
            throw ConfigError("config key '" + key + "' given twice");
        kv[key] = value;
    }

    RunConfig cfg;
    bool have_min = false, have_max = false;
    auto take = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };

    try {
        if (const auto* v = take("geometry")) cfg.spec.geometry = geometry_from_string(*v);
        if (const auto* v = take("n_guides"))
            cfg.spec.n_guides = static_cast<int>(parse_int("n_guides", *v));
        if (const auto* v = take("coupling")) cfg.spec.mean_coupling = parse_double("coupling", *v);
        if (const auto* v = take("dimerization"))
            cfg.spec.dimerization = parse_double("dimerization", *v);
        if (const auto* v = take("defect_detune"))
            cfg.spec.defect_detune = parse_double("defect_detune", *v);
        if (const auto* v = take("pump_ratio")) cfg.spec.pump_ratio = parse_double("pump_ratio", *v);
        if (const auto* v = take("length")) cfg.spec.length = parse_double("length", *v);
        if (const auto* v = take("spdc_gain")) cfg.spec.spdc_gain = parse_double("spdc_gain", *v);
        if (const auto* v = take("disorder")) cfg.disorder = parse_double("disorder", *v);
        if (const auto* v = take("disorder_list")) {
            for (const std::string& item : split_list(*v))
                cfg.disorder_list.push_back(parse_double("disorder_list", item));
        }
        if (const auto* v = take("realizations"))
            cfg.realizations = static_cast<int>(parse_int("realizations", *v));
        if (const auto* v = take("master_seed")) cfg.master_seed = parse_u64("master_seed", *v);
        if (const auto* v = take("realization_index"))
            cfg.realization_index = parse_u64("realization_index", *v);
        if (const auto* v = take("grid_min")) {
            cfg.grid_min = parse_double("grid_min", *v);
            have_min = true;
        }
        if (const auto* v = take("grid_max")) {
            cfg.grid_max = parse_double("grid_max", *v);
            have_max = true;
        }
        if (const auto* v = take("grid_points"))
            cfg.grid_points = static_cast<int>(parse_int("grid_points", *v));
        if (const auto* v = take("dispersion_ps_mm"))
            cfg.map.dispersion_ps_per_mm = parse_double("dispersion_ps_mm", *v);
        if (const auto* v = take("lambda0_nm")) cfg.map.lambda0_nm = parse_double("lambda0_nm", *v);
        if (const auto* v = take("solver")) cfg.solver = solver_from_string(*v);
        if (const auto* v = take("threads")) cfg.threads = static_cast<int>(parse_int("threads", *v));
        if (const auto* v = take("out_dir")) cfg.out_dir = *v;
        if (const auto* v = take("geometries")) {
            for (const std::string& item : split_list(*v))
                cfg.geometries.push_back(geometry_from_string(item));
        }
        if (const auto* v = take("diagonal_disorder"))
            cfg.diagonal_disorder = parse_double("diagonal_disorder", *v);
        if (const auto* v = take("modes_field")) {
            if (*v == "spdc")
                cfg.modes_field = FieldKind::Spdc;
            else if (*v == "pump")
                cfg.modes_field = FieldKind::Pump;
            else
                throw ConfigError("modes_field must be spdc|pump");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    static const char* known[] = {
        "geometry",      "n_guides",     "coupling",        "dimerization",
        "defect_detune", "pump_ratio",   "length",          "spdc_gain",
        "disorder",      "disorder_list", "realizations",   "master_seed",
        "realization_index", "grid_min", "grid_max",        "grid_points",
        "dispersion_ps_mm", "lambda0_nm", "solver",         "threads",
        "out_dir",       "geometries",   "diagonal_disorder", "modes_field"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigError("unknown config key '" + key + "'");
    }

    if (have_min != have_max)
        throw ConfigError("grid_min and grid_max must be given together");
    cfg.grid_explicit = have_min;
    if (!cfg.grid_explicit) {
        cfg.grid_min = -6.0 * cfg.spec.mean_coupling;
        cfg.grid_max = 6.0 * cfg.spec.mean_coupling;
    }

    // Revalidate every module invariant now so commands can assume a good config.
    try {
        cfg.spec.validate();
        cfg.grid().validate();
        cfg.map.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.disorder < 0.0 || cfg.disorder >= 1.0)
        throw ConfigError("disorder must lie in [0, 1)");
    for (double d : cfg.disorder_list)
        if (d < 0.0 || d >= 1.0) throw ConfigError("disorder_list entries must lie in [0, 1)");
    for (std::size_t i = 1; i < cfg.disorder_list.size(); ++i)
        if (!(cfg.disorder_list[i] > cfg.disorder_list[i - 1]))
            throw ConfigError("disorder_list must be strictly ascending");
    if (cfg.realizations < 1) throw ConfigError("realizations must be >= 1");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    if (cfg.diagonal_disorder < 0.0) throw ConfigError("diagonal_disorder must be >= 0");
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string canonical_config_text(const RunConfig& cfg) {
    std::ostringstream o;
    o << "geometry = " << to_string(cfg.spec.geometry) << '\n';
    o << "n_guides = " << cfg.spec.n_guides << '\n';
    o << "coupling = " << format_number(cfg.spec.mean_coupling) << '\n';
    o << "dimerization = " << format_number(cfg.spec.dimerization) << '\n';
    o << "defect_detune = " << format_number(cfg.spec.defect_detune) << '\n';
    o << "pump_ratio = " << format_number(cfg.spec.pump_ratio) << '\n';
    o << "length = " << format_number(cfg.spec.length) << '\n';
    o << "spdc_gain = " << format_number(cfg.spec.spdc_gain) << '\n';
    o << "disorder = " << format_number(cfg.disorder) << '\n';
    if (!cfg.disorder_list.empty()) {
        o << "disorder_list = ";
        for (std::size_t i = 0; i < cfg.disorder_list.size(); ++i)
            o << (i ? "," : "") << format_number(cfg.disorder_list[i]);
        o << '\n';
    }
    o << "realizations = " << cfg.realizations << '\n';
    o << "master_seed = " << cfg.master_seed << '\n';
    o << "realization_index = " << cfg.realization_index << '\n';
    o << "grid_min = " << format_number(cfg.grid_min) << '\n';
    o << "grid_max = " << format_number(cfg.grid_max) << '\n';
    o << "grid_points = " << cfg.grid_points << '\n';
    o << "dispersion_ps_mm = " << format_number(cfg.map.dispersion_ps_per_mm) << '\n';
    o << "lambda0_nm = " << format_number(cfg.map.lambda0_nm) << '\n';
    o << "solver = " << to_string(cfg.solver) << '\n';
    o << "threads = " << cfg.threads << '\n';
    o << "out_dir = " << cfg.out_dir << '\n';
    if (!cfg.geometries.empty()) {
        o << "geometries = ";
        for (std::size_t i = 0; i < cfg.geometries.size(); ++i)
            o << (i ? "," : "") << to_string(cfg.geometries[i]);
        o << '\n';
    }
    o << "diagonal_disorder = " << format_number(cfg.diagonal_disorder) << '\n';
    o << "modes_field = " << (cfg.modes_field == FieldKind::Spdc ? "spdc" : "pump") << '\n';
    return o.str();
}

} // namespace spdc::cli
