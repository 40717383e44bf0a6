#include "fringekit/serialize.hpp"

#include <fstream>
#include <json.hpp>

#include "fringekit/textio.hpp"

namespace fringekit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json fit_json(const FringeFit& fit) {
    ordered_json j;
    j["k"] = fit.k;
    j["a_per_m2"] = fit.a;
    j["b_rad_per_m"] = fit.b;
    j["phi_rad"] = fit.phi;
    j["rms_residual"] = fit.rms_residual;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

}  // namespace

std::string field_to_csv(const VectorField& f) {
    std::string out = "position_m,re_h,im_h,re_v,im_v\n";
    for (std::size_t i = 0; i < f.h.size(); ++i) {
        out += format_double(f.h.position(i));
        out += ',';
        out += format_double(f.h[i].real());
        out += ',';
        out += format_double(f.h[i].imag());
        out += ',';
        out += format_double(f.v[i].real());
        out += ',';
        out += format_double(f.v[i].imag());
        out += '\n';
    }
    return out;
}

std::string field_to_json(const VectorField& f) {
    ordered_json j;
    j["pitch_m"] = f.h.pitch();
    j["wavelength_m"] = f.h.wavelength();
    j["origin_offset_m"] = f.h.grid().origin_offset;
    auto& cols = j["samples"];
    cols["position_m"] = f.h.positions();
    std::vector<double> re_h, im_h, re_v, im_v;
    for (std::size_t i = 0; i < f.h.size(); ++i) {
        re_h.push_back(f.h[i].real());
        im_h.push_back(f.h[i].imag());
        re_v.push_back(f.v[i].real());
        im_v.push_back(f.v[i].imag());
    }
    cols["re_h"] = re_h;
    cols["im_h"] = im_h;
    cols["re_v"] = re_v;
    cols["im_v"] = im_v;
    return j.dump(2) + "\n";
}

std::string profile_to_csv(const std::vector<double>& positions, const std::vector<double>& values) {
    std::string out = "position_m,intensity\n";
    for (std::size_t i = 0; i < positions.size() && i < values.size(); ++i) {
        out += format_double(positions[i]);
        out += ',';
        out += format_double(values[i]);
        out += '\n';
    }
    return out;
}

std::string clicks_to_csv(const std::vector<ClickEvent>& clicks) {
    std::string out = "detector_id,bin,timestamp_s\n";
    for (const auto& c : clicks) {
        out += format_u64(c.detector_id);
        out += ',';
        out += format_u64(c.bin);
        out += ',';
        out += format_double(c.timestamp);
        out += '\n';
    }
    return out;
}

std::string clicks_to_json(const std::vector<ClickEvent>& clicks) {
    ordered_json j = ordered_json::array();
    for (const auto& c : clicks) {
        ordered_json e;
        e["detector_id"] = c.detector_id;
        e["bin"] = c.bin;
        e["timestamp_s"] = c.timestamp;
        j.push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string pulses_to_csv(const std::vector<PulsePair>& pulses) {
    std::string out =
        "timestamp_s,sig_re_h,sig_im_h,sig_re_v,sig_im_v,idl_re_h,idl_im_h,idl_re_v,idl_im_v\n";
    for (const auto& p : pulses) {
        out += format_double(p.timestamp);
        for (const auto& c : {p.signal.e_h, p.signal.e_v, p.idler.e_h, p.idler.e_v}) {
            out += ',';
            out += format_double(c.real());
            out += ',';
            out += format_double(c.imag());
        }
        out += '\n';
    }
    return out;
}

std::string histogram_to_csv(const LabeledHistogram& h) {
    std::string out = "bin_center_m,counts\n";
    for (std::size_t i = 0; i < h.bin_centers.size() && i < h.counts.size(); ++i) {
        out += format_double(h.bin_centers[i]);
        out += ',';
        out += format_double(h.counts[i]);
        out += '\n';
    }
    return out;
}

std::string fit_to_json(const FringeFit& fit) { return fit_json(fit).dump(2) + "\n"; }

std::string nodes_to_json(const std::vector<double>& nodes) {
    ordered_json j;
    j["node_positions_m"] = nodes;
    return j.dump(2) + "\n";
}

std::string result_to_json(const ExperimentResult& r, const std::vector<std::string>& artifacts,
                           bool embed_histograms) {
    ordered_json j;
    j["kind"] = r.kind;
    j["version"] = r.version;
    j["seed"] = r.seed;
    ordered_json cfg;
    for (const auto& [k, v] : r.config_echo) cfg[k] = v;
    j["config"] = cfg;
    j["artifacts"] = artifacts;
    ordered_json scalars;
    for (const auto& [k, v] : r.scalars) scalars[k] = v;
    j["scalars"] = scalars;
    ordered_json fits;
    for (const auto& [k, v] : r.fits) fits[k] = fit_json(v);
    j["fits"] = fits;
    ordered_json series;
    for (const auto& [k, v] : r.series) series[k] = v;
    j["series"] = series;
    if (embed_histograms) {
        ordered_json hists;
        for (const auto& [k, v] : r.histograms) {
            ordered_json h;
            h["bin_center_m"] = v.bin_centers;
            h["counts"] = v.counts;
            hists[k] = h;
        }
        j["histograms"] = hists;
    }
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace fringekit
