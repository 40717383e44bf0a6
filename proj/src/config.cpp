#include "fringekit/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fringekit/errors.hpp"

namespace fringekit {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct KvLine {
    std::string key;
    std::string value;
    int line = 0;
};

std::vector<KvLine> tokenize(const std::string& text) {
    std::vector<KvLine> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        KvLine kv;
        kv.key = trim(raw.substr(0, eq));
        kv.value = trim(raw.substr(eq + 1));
        kv.line = lineno;
        if (kv.key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (kv.value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty value for key '" +
                              kv.key + "'");
        lines.push_back(kv);
    }
    return lines;
}

double parse_number(const KvLine& kv) {
    const std::string& s = kv.value;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw ConfigError("config line " + std::to_string(kv.line) + ": key '" + kv.key +
                          "' has a malformed number '" + s + "'");
    return v;
}

std::uint64_t parse_unsigned(const KvLine& kv) {
    std::uint64_t v = 0;
    const auto* b = kv.value.data();
    const auto* e = b + kv.value.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw ConfigError("config line " + std::to_string(kv.line) + ": key '" + kv.key +
                          "' needs a nonnegative integer, got '" + kv.value + "'");
    return v;
}

bool parse_bool(const KvLine& kv) {
    if (kv.value == "true" || kv.value == "on" || kv.value == "1") return true;
    if (kv.value == "false" || kv.value == "off" || kv.value == "0") return false;
    throw ConfigError("config line " + std::to_string(kv.line) + ": key '" + kv.key +
                      "' needs true/false, got '" + kv.value + "'");
}

using Handler = std::function<void(const KvLine&)>;
using HandlerMap = std::map<std::string, Handler, std::less<>>;

void apply_lines(const std::string& text, const HandlerMap& handlers) {
    std::map<std::string, int> seen;
    for (const auto& kv : tokenize(text)) {
        const auto it = handlers.find(kv.key);
        if (it == handlers.end())
            throw ConfigError("config line " + std::to_string(kv.line) + ": unknown key '" +
                              kv.key + "'");
        if (const auto [prev, inserted] = seen.emplace(kv.key, kv.line); !inserted)
            throw ConfigError("config line " + std::to_string(kv.line) + ": duplicate key '" +
                              kv.key + "' (first on line " + std::to_string(prev->second) + ")");
        it->second(kv);
    }
}

HandlerMap eraser_handlers(EraserConfig& c) {
    HandlerMap h;
    h["wavelength_nm"] = [&c](const KvLine& kv) { c.wavelength = parse_number(kv) * 1e-9; };
    h["slit_width_um"] = [&c](const KvLine& kv) { c.slit_width = parse_number(kv) * 1e-6; };
    h["slit_separation_um"] = [&c](const KvLine& kv) { c.slit_separation = parse_number(kv) * 1e-6; };
    h["beam_waist_um"] = [&c](const KvLine& kv) { c.beam_waist = parse_number(kv) * 1e-6; };
    h["screen_distance_m"] = [&c](const KvLine& kv) { c.screen_distance = parse_number(kv); };
    h["slit_polarizer_a_deg"] = [&c](const KvLine& kv) { c.slit_polarizer_a = parse_number(kv) * kDegree; };
    h["slit_polarizer_b_deg"] = [&c](const KvLine& kv) { c.slit_polarizer_b = parse_number(kv) * kDegree; };
    h["idler_polarizer"] = [&c](const KvLine& kv) {
        if (kv.value == "vertical") c.idler_polarizer = IdlerPolarizer::Vertical;
        else if (kv.value == "horizontal") c.idler_polarizer = IdlerPolarizer::Horizontal;
        else if (kv.value == "absent") c.idler_polarizer = IdlerPolarizer::Absent;
        else
            throw ConfigError("config line " + std::to_string(kv.line) +
                              ": idler_polarizer must be vertical|horizontal|absent");
    };
    h["pdc_type"] = [&c](const KvLine& kv) {
        if (kv.value == "type1") c.pdc_type = PdcType::TypeI;
        else if (kv.value == "type2") c.pdc_type = PdcType::TypeII;
        else
            throw ConfigError("config line " + std::to_string(kv.line) +
                              ": pdc_type must be type1|type2");
    };
    h["n_pairs"] = [&c](const KvLine& kv) { c.n_pairs = parse_unsigned(kv); };
    h["mean_rate_hz"] = [&c](const KvLine& kv) { c.mean_rate = parse_number(kv); };
    h["pairing_efficiency"] = [&c](const KvLine& kv) { c.pairing_efficiency = parse_number(kv); };
    h["detector_bins"] = [&c](const KvLine& kv) { c.detector_bins = parse_unsigned(kv); };
    h["detector_efficiency"] = [&c](const KvLine& kv) { c.detector_efficiency = parse_number(kv); };
    h["idler_efficiency"] = [&c](const KvLine& kv) { c.idler_efficiency = parse_number(kv); };
    h["dark_rate_hz"] = [&c](const KvLine& kv) { c.dark_rate = parse_number(kv); };
    h["detector_halfspan_mm"] = [&c](const KvLine& kv) { c.detector_halfspan = parse_number(kv) * 1e-3; };
    h["coincidence_window_ns"] = [&c](const KvLine& kv) { c.coincidence_window = parse_number(kv) * 1e-9; };
    h["signal_path_delay_ns"] = [&c](const KvLine& kv) { c.signal_path_delay = parse_number(kv) * 1e-9; };
    h["sim_samples"] = [&c](const KvLine& kv) { c.grid.samples = parse_unsigned(kv); };
    h["sim_extent_mm"] = [&c](const KvLine& kv) { c.grid.extent = parse_number(kv) * 1e-3; };
    h["seed"] = [&c](const KvLine& kv) { c.seed = parse_unsigned(kv); };
    return h;
}

HandlerMap afshar_handlers(AfsharConfig& c) {
    HandlerMap h;
    h["wavelength_nm"] = [&c](const KvLine& kv) { c.wavelength = parse_number(kv) * 1e-9; };
    h["slit_width_um"] = [&c](const KvLine& kv) { c.slit_width = parse_number(kv) * 1e-6; };
    h["slit_separation_um"] = [&c](const KvLine& kv) { c.slit_separation = parse_number(kv) * 1e-6; };
    h["beam_waist_um"] = [&c](const KvLine& kv) { c.beam_waist = parse_number(kv) * 1e-6; };
    h["dist_slits_grid_m"] = [&c](const KvLine& kv) { c.dist_slits_grid = parse_number(kv); };
    h["dist_grid_lens_m"] = [&c](const KvLine& kv) { c.dist_grid_lens = parse_number(kv); };
    h["dist_lens_image_m"] = [&c](const KvLine& kv) { c.dist_lens_image = parse_number(kv); };
    h["focal_length_m"] = [&c](const KvLine& kv) { c.focal_length = parse_number(kv); };
    h["imaging_tolerance"] = [&c](const KvLine& kv) { c.imaging_tolerance = parse_number(kv); };
    h["wire_width_um"] = [&c](const KvLine& kv) { c.wire_width = parse_number(kv) * 1e-6; };
    h["wire_count"] = [&c](const KvLine& kv) { c.wire_count = parse_unsigned(kv); };
    h["node_threshold"] = [&c](const KvLine& kv) { c.node_threshold = parse_number(kv); };
    h["slit_blocking"] = [&c](const KvLine& kv) {
        if (kv.value == "none") c.slit_blocking = SlitBlocking::None;
        else if (kv.value == "slit_a") c.slit_blocking = SlitBlocking::SlitA;
        else if (kv.value == "slit_b") c.slit_blocking = SlitBlocking::SlitB;
        else
            throw ConfigError("config line " + std::to_string(kv.line) +
                              ": slit_blocking must be none|slit_a|slit_b");
    };
    h["grid_present"] = [&c](const KvLine& kv) { c.grid_present = parse_bool(kv); };
    h["band_tolerance"] = [&c](const KvLine& kv) { c.band_loss_tolerance = parse_number(kv); };
    h["sim_samples"] = [&c](const KvLine& kv) { c.grid.samples = parse_unsigned(kv); };
    h["sim_extent_mm"] = [&c](const KvLine& kv) { c.grid.extent = parse_number(kv) * 1e-3; };
    h["seed"] = [&c](const KvLine& kv) { c.seed = parse_unsigned(kv); };
    return h;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string kv_to_text(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

}  // namespace

EraserConfig parse_eraser_config_text(const std::string& text) {
    EraserConfig c;
    auto handlers = eraser_handlers(c);
    apply_lines(text, handlers);
    c.validate();
    return c;
}

DelayedChoiceConfig parse_delayed_choice_config_text(const std::string& text) {
    DelayedChoiceConfig c;
    auto handlers = eraser_handlers(c.base);
    handlers["splitter_transmittance"] =
        [&c](const KvLine& kv) { c.splitter_transmittance = parse_number(kv); };
    apply_lines(text, handlers);
    c.validate();
    return c;
}

AfsharConfig parse_afshar_config_text(const std::string& text) {
    AfsharConfig c;
    auto handlers = afshar_handlers(c);
    apply_lines(text, handlers);
    c.validate();
    return c;
}

EraserConfig parse_eraser_config(const std::filesystem::path& path) {
    return parse_eraser_config_text(read_file(path));
}

DelayedChoiceConfig parse_delayed_choice_config(const std::filesystem::path& path) {
    return parse_delayed_choice_config_text(read_file(path));
}

AfsharConfig parse_afshar_config(const std::filesystem::path& path) {
    return parse_afshar_config_text(read_file(path));
}

std::string emit_config(const EraserConfig& cfg) { return kv_to_text(echo_config(cfg)); }
std::string emit_config(const DelayedChoiceConfig& cfg) { return kv_to_text(echo_config(cfg)); }
std::string emit_config(const AfsharConfig& cfg) { return kv_to_text(echo_config(cfg)); }

}  // namespace fringekit
