#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace fringekit {

/// One resolved CLI invocation.
struct RunManifest {
    std::string subcommand;               // eraser | delayed-choice | afshar | nodes | fit
    std::filesystem::path config_path;    // empty = all defaults
    std::optional<std::uint64_t> seed;    // overrides the config seed
    std::filesystem::path out_dir;        // empty = $FRINGEKIT_OUT or ./fringekit_out
    std::string format = "csv";           // csv | json
    std::filesystem::path input;          // fit: histogram CSV to refit
};

std::filesystem::path resolve_out_dir(const RunManifest& m);

/// Run the named experiment/analysis and write its artifacts. Returns 0 when
/// every requested artifact was written, nonzero after printing a diagnostic
/// to stderr. Nothing is written until the run succeeds, and files are
/// replaced atomically (write-then-rename).
int dispatch(const RunManifest& m);

}  // namespace fringekit
