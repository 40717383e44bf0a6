#include <CLI11.hpp>
#include <string>

#include "fringekit/cli.hpp"
#include "fringekit/config.hpp"
#include "fringekit/experiments.hpp"

namespace {

void add_common_options(CLI::App* sub, fringekit::RunManifest& m) {
    sub->add_option("--config", m.config_path, "Config file (key = value lines)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", m.seed, "Override the config seed");
    sub->add_option("--out", m.out_dir, "Output directory (default: $FRINGEKIT_OUT or ./fringekit_out)");
    sub->add_option("--format", m.format, "Histogram artifact format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str("csv");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fringekit: classical wave-optics runs of the eraser, delayed-choice and "
                 "wire-grid imaging experiments"};
    app.set_version_flag("--version", std::string(fringekit::kToolName) + " " +
                                          std::string(fringekit::kVersion));
    app.require_subcommand(1);

    fringekit::RunManifest manifest;

    auto* eraser = app.add_subcommand("eraser", "Polarization-tagged double-slit eraser run");
    add_common_options(eraser, manifest);
    bool emit_defaults = false;
    eraser->add_flag("--emit-default-config", emit_defaults,
                     "Print the default config to stdout and exit");

    auto* delayed = app.add_subcommand("delayed-choice",
                                       "Eraser with beam-splitter routed idler analysis");
    add_common_options(delayed, manifest);

    auto* afshar = app.add_subcommand("afshar", "Wire grid at the interference nodes, slits imaged");
    add_common_options(afshar, manifest);

    auto* nodes = app.add_subcommand("nodes", "Emit the interference node positions for a config");
    add_common_options(nodes, manifest);

    auto* fit = app.add_subcommand("fit", "Refit an existing histogram CSV with the fringe model");
    add_common_options(fit, manifest);
    fit->add_option("--input", manifest.input, "Histogram CSV (bin_center_m,counts)")
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    manifest.subcommand = app.get_subcommands().front()->get_name();
    if (emit_defaults) {
        std::fputs(fringekit::emit_config(fringekit::EraserConfig{}).c_str(), stdout);
        return 0;
    }
    return fringekit::dispatch(manifest);
}
