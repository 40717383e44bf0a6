#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fringekit/analysis.hpp"
#include "fringekit/sources.hpp"

namespace fringekit {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "fringekit";

/// Degrees-to-radians factor; config files carry angles in degrees.
inline constexpr double kDegree = 3.14159265358979323846 / 180.0;

enum class IdlerPolarizer { Vertical, Horizontal, Absent };
enum class SlitBlocking { None, SlitA, SlitB };

/// Simulation grid for the field solves; the detector/screen region lives
/// well inside it.
struct SimGrid {
    std::size_t samples = 65536;
    double extent = 0.18;  // meters
};

/// Polarization-tagged double-slit eraser run.
struct EraserConfig {
    double wavelength = 702e-9;
    double slit_width = 40e-6;
    double slit_separation = 250e-6;
    /// Waist of the Gaussian illumination profile across each slit; keeps the
    /// far-field envelope Gaussian rather than sinc^2.
    double beam_waist = 10e-6;
    double screen_distance = 1.0;
    double slit_polarizer_a = -45.0 * kDegree;  // radians from vertical
    double slit_polarizer_b = 45.0 * kDegree;
    IdlerPolarizer idler_polarizer = IdlerPolarizer::Vertical;
    PdcType pdc_type = PdcType::TypeI;
    std::size_t n_pairs = 100000;
    double mean_rate = 1e5;           // Hz
    double pairing_efficiency = 1.0;  // fraction of pairs whose idler survives
    std::size_t detector_bins = 72;
    double detector_efficiency = 1.0;
    double idler_efficiency = 1.0;
    double dark_rate = 0.0;          // Hz per bin
    double detector_halfspan = 0.0;  // meters; 0 = auto (far-field envelope waist)
    double coincidence_window = 5e-9;
    double signal_path_delay = 0.0;  // timestamp offset only; no physics rides on it
    SimGrid grid;
    std::uint64_t seed = 42;

    void validate() const;
    double resolved_halfspan() const;
};

/// Eraser run whose idler is routed by a passive beam splitter into either
/// the erasing analysis (mother H/V basis, recovers the daughter patterns) or
/// the which-path analysis (slit-tag +-pi/4 basis).
struct DelayedChoiceConfig {
    EraserConfig base;                    // idler_polarizer is ignored
    double splitter_transmittance = 0.5;  // probability of the eraser arm

    void validate() const;
};

/// Wire-grid imaging run: nodes found at the interference plane, opaque wires
/// placed there, slits imaged through a thin lens.
struct AfsharConfig {
    double wavelength = 702e-9;
    double slit_width = 40e-6;
    double slit_separation = 250e-6;
    double beam_waist = 10e-6;
    double dist_slits_grid = 0.5;
    double dist_grid_lens = 0.25;
    double dist_lens_image = 1.5;
    double focal_length = 0.5;
    double imaging_tolerance = 1e-6;  // relative tolerance on 1/s + 1/s' = 1/f
    double wire_width = 0.0;          // meters; 0 = auto (10% of the node spacing)
    std::size_t wire_count = 12;
    double node_threshold = 0.05;
    /// Which slit the blocked-slit cases close; None behaves as SlitB.
    SlitBlocking slit_blocking = SlitBlocking::None;
    bool grid_present = true;
    /// The wire edges scatter a little power to high angles; propagation after
    /// the grid runs with this band-loss tolerance (the collection band).
    double band_loss_tolerance = 0.01;
    SimGrid grid;
    std::uint64_t seed = 42;

    void validate() const;
    double magnification() const;  // image plane / slit plane, signed
};

struct LabeledHistogram {
    std::vector<double> bin_centers;
    std::vector<double> counts;
};

/// Everything one run produces: named histograms/profiles, fits, scalar
/// metrics, and full provenance (config echo, seed, version).
struct ExperimentResult {
    std::string kind;
    std::string version{kToolName};
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::pair<std::string, LabeledHistogram>> histograms;
    std::vector<std::pair<std::string, FringeFit>> fits;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, std::vector<double>>> series;

    const LabeledHistogram* histogram(std::string_view label) const;
    const FringeFit* fit(std::string_view label) const;
    std::optional<double> scalar(std::string_view label) const;
};

ExperimentResult run_eraser(const EraserConfig& cfg);
ExperimentResult run_delayed_choice(const DelayedChoiceConfig& cfg);
ExperimentResult run_afshar(const AfsharConfig& cfg);

/// All interference nodes of the open-slit pattern at the grid plane.
std::vector<double> afshar_node_positions(const AfsharConfig& cfg);

/// Flat key=value echo of a config, in canonical key order. The same schema
/// the CLI config files use.
std::vector<std::pair<std::string, std::string>> echo_config(const EraserConfig& cfg);
std::vector<std::pair<std::string, std::string>> echo_config(const DelayedChoiceConfig& cfg);
std::vector<std::pair<std::string, std::string>> echo_config(const AfsharConfig& cfg);

}  // namespace fringekit
