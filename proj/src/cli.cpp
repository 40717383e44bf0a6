#include "fringekit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fringekit/config.hpp"
#include "fringekit/errors.hpp"
#include "fringekit/serialize.hpp"
#include "fringekit/textio.hpp"

namespace fringekit {

namespace {

namespace fs = std::filesystem;

LabeledHistogram read_histogram_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read histogram CSV: " + path.string());
    LabeledHistogram h;
    std::string line;
    if (!std::getline(in, line) || line.rfind("bin_center_m,counts", 0) != 0)
        throw ConfigError("histogram CSV must start with header 'bin_center_m,counts': " +
                          path.string());
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                              ": expected 'position,counts'");
        h.bin_centers.push_back(std::stod(line.substr(0, comma)));
        h.counts.push_back(std::stod(line.substr(comma + 1)));
    }
    return h;
}

void write_experiment(const ExperimentResult& r, const fs::path& dir, const std::string& format) {
    std::vector<std::string> artifacts{"result.json"};
    if (format == "csv")
        for (const auto& [label, hist] : r.histograms) artifacts.push_back(label + ".csv");

    fs::create_directories(dir);
    write_file_atomic(dir / "result.json",
                      result_to_json(r, artifacts, /*embed_histograms=*/format == "json"));
    if (format == "csv")
        for (const auto& [label, hist] : r.histograms)
            write_file_atomic(dir / (label + ".csv"), histogram_to_csv(hist));
}

}  // namespace

std::filesystem::path resolve_out_dir(const RunManifest& m) {
    if (!m.out_dir.empty()) return m.out_dir;
    if (const char* env = std::getenv("FRINGEKIT_OUT"); env && *env) return fs::path(env);
    return fs::path("fringekit_out");
}

int dispatch(const RunManifest& m) {
    try {
        const fs::path dir = resolve_out_dir(m);

        if (m.subcommand == "eraser" || m.subcommand == "delayed-choice") {
            if (m.subcommand == "eraser") {
                EraserConfig cfg = m.config_path.empty() ? EraserConfig{}
                                                         : parse_eraser_config(m.config_path);
                if (m.seed) cfg.seed = *m.seed;
                cfg.validate();
                write_experiment(run_eraser(cfg), dir, m.format);
            } else {
                DelayedChoiceConfig cfg = m.config_path.empty()
                                              ? DelayedChoiceConfig{}
                                              : parse_delayed_choice_config(m.config_path);
                if (m.seed) cfg.base.seed = *m.seed;
                cfg.validate();
                write_experiment(run_delayed_choice(cfg), dir, m.format);
            }
            return 0;
        }

        if (m.subcommand == "afshar") {
            AfsharConfig cfg =
                m.config_path.empty() ? AfsharConfig{} : parse_afshar_config(m.config_path);
            if (m.seed) cfg.seed = *m.seed;
            cfg.validate();
            write_experiment(run_afshar(cfg), dir, m.format);
            return 0;
        }

        if (m.subcommand == "nodes") {
            AfsharConfig cfg =
                m.config_path.empty() ? AfsharConfig{} : parse_afshar_config(m.config_path);
            if (m.seed) cfg.seed = *m.seed;
            const auto nodes = afshar_node_positions(cfg);
            fs::create_directories(dir);
            write_file_atomic(dir / "nodes.json", nodes_to_json(nodes));
            if (m.format == "csv") {
                std::string csv = "node_index,position_m\n";
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    csv += std::to_string(i);
                    csv += ',';
                    csv += format_double(nodes[i]);
                    csv += '\n';
                }
                write_file_atomic(dir / "nodes.csv", csv);
            }
            return 0;
        }

        if (m.subcommand == "fit") {
            if (m.input.empty()) {
                std::cerr << "fit: --input <histogram.csv> is required\n";
                return 1;
            }
            const LabeledHistogram h = read_histogram_csv(m.input);
            const FringeFit fit = fit_fringe(h.counts, h.bin_centers);
            fs::create_directories(dir);
            write_file_atomic(dir / "fit.json", fit_to_json(fit));
            if (!fit.converged) {
                std::cerr << "fit: did not converge; wrote best-so-far parameters\n";
                return 1;
            }
            return 0;
        }

        std::cerr << "unknown subcommand: " << m.subcommand << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << m.subcommand << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fringekit
