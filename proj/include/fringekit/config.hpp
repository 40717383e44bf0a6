#pragma once

#include <filesystem>
#include <string>

#include "fringekit/experiments.hpp"

namespace fringekit {

/// Parse a flat key=value config. Keys carry typed unit suffixes
/// (slit_width_um, coincidence_window_ns, ...); '#' starts a comment; unknown
/// and duplicate keys are rejected with line diagnostics. Omitted keys keep
/// their defaults; an empty file yields the full default config. The parsed
/// config is validated before it is returned.
EraserConfig parse_eraser_config_text(const std::string& text);
DelayedChoiceConfig parse_delayed_choice_config_text(const std::string& text);
AfsharConfig parse_afshar_config_text(const std::string& text);

EraserConfig parse_eraser_config(const std::filesystem::path& path);
DelayedChoiceConfig parse_delayed_choice_config(const std::filesystem::path& path);
AfsharConfig parse_afshar_config(const std::filesystem::path& path);

/// Canonical "key = value" text for a config; parsing it back reproduces the
/// config exactly.
std::string emit_config(const EraserConfig& cfg);
std::string emit_config(const DelayedChoiceConfig& cfg);
std::string emit_config(const AfsharConfig& cfg);

}  // namespace fringekit
