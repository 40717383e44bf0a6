#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fringekit/analysis.hpp"
#include "fringekit/detection.hpp"
#include "fringekit/experiments.hpp"
#include "fringekit/sources.hpp"
#include "fringekit/wavefield.hpp"

namespace fringekit {

/// CSV with columns position_m, re_h, im_h, re_v, im_v.
std::string field_to_csv(const VectorField& f);
std::string field_to_json(const VectorField& f);

/// CSV with columns position_m, intensity.
std::string profile_to_csv(const std::vector<double>& positions, const std::vector<double>& values);

/// CSV with columns detector_id, bin, timestamp_s.
std::string clicks_to_csv(const std::vector<ClickEvent>& clicks);
std::string clicks_to_json(const std::vector<ClickEvent>& clicks);

/// CSV with columns timestamp_s, sig_re_h, sig_im_h, sig_re_v, sig_im_v,
/// idl_re_h, idl_im_h, idl_re_v, idl_im_v.
std::string pulses_to_csv(const std::vector<PulsePair>& pulses);

/// CSV with columns bin_center_m, counts.
std::string histogram_to_csv(const LabeledHistogram& h);

std::string fit_to_json(const FringeFit& fit);
std::string nodes_to_json(const std::vector<double>& nodes);

/// Full result document: config echo, seed, version, artifact index, scalars,
/// fits, series, and (optionally) the histograms themselves.
std::string result_to_json(const ExperimentResult& r,
                           const std::vector<std::string>& artifacts = {"result.json"},
                           bool embed_histograms = true);

/// Write via a temp file and rename; existing content is never left half
/// overwritten.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fringekit
