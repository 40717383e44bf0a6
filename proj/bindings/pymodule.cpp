#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fringekit/analysis.hpp"
#include "fringekit/cli.hpp"
#include "fringekit/config.hpp"
#include "fringekit/detection.hpp"
#include "fringekit/experiments.hpp"
#include "fringekit/polarization.hpp"
#include "fringekit/rng.hpp"
#include "fringekit/serialize.hpp"
#include "fringekit/sources.hpp"
#include "fringekit/wavefield.hpp"

namespace py = pybind11;
using namespace fringekit;

namespace {

ScalarField make_field(std::size_t n, double extent, double wavelength,
                       const std::vector<complexd>& samples) {
    GridSpec g = GridSpec::centered(n, extent);
    if (samples.empty()) return ScalarField(g, wavelength);
    return ScalarField(g, wavelength, samples);
}

py::dict scalars_dict(const ExperimentResult& r) {
    py::dict d;
    for (const auto& [k, v] : r.scalars) d[py::str(k)] = v;
    return d;
}

py::dict histograms_dict(const ExperimentResult& r) {
    py::dict d;
    for (const auto& [k, v] : r.histograms)
        d[py::str(k)] = py::make_tuple(v.bin_centers, v.counts);
    return d;
}

py::dict fits_dict(const ExperimentResult& r) {
    py::dict d;
    for (const auto& [k, v] : r.fits) d[py::str(k)] = v;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fringekit, m) {
    m.doc() = "Classical wave-optics simulation of the polarization eraser, delayed-choice "
              "eraser and wire-grid imaging experiments";
    m.attr("__version__") = std::string(kVersion);

    // polarization
    py::class_<JonesVector>(m, "JonesVector")
        .def(py::init<complexd, complexd>(), py::arg("e_h"), py::arg("e_v"))
        .def_readwrite("e_h", &JonesVector::e_h)
        .def_readwrite("e_v", &JonesVector::e_v)
        .def_static("vertical", &JonesVector::vertical)
        .def_static("horizontal", &JonesVector::horizontal)
        .def_static("linear", &JonesVector::linear, py::arg("theta"))
        .def("__repr__", [](const JonesVector& j) {
            return "JonesVector(e_h=" + std::to_string(j.e_h.real()) + "+" +
                   std::to_string(j.e_h.imag()) + "j, e_v=" + std::to_string(j.e_v.real()) + "+" +
                   std::to_string(j.e_v.imag()) + "j)";
        });
    m.def("intensity", &intensity, py::arg("jones"));
    m.def(
        "apply_polarizer",
        [](const JonesVector& j, double theta) { return apply_polarizer(j, PolarizerAngle(theta)); },
        py::arg("jones"), py::arg("theta"), "Project onto an ideal linear polarizer at theta "
        "radians from the vertical");
    m.def("decompose", &decompose, py::arg("jones"));

    // wavefield
    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init(&make_field), py::arg("n"), py::arg("extent"), py::arg("wavelength"),
             py::arg("samples") = std::vector<complexd>{})
        .def_property_readonly("wavelength", &ScalarField::wavelength)
        .def_property_readonly("pitch", &ScalarField::pitch)
        .def("positions", &ScalarField::positions)
        .def("samples", [](const ScalarField& f) { return f.samples(); })
        .def("intensity", &ScalarField::intensity)
        .def("total_power", &ScalarField::total_power)
        .def("__len__", &ScalarField::size);
    m.def(
        "gaussian_beam",
        [](std::size_t n, double extent, double wavelength, double center, double waist) {
            return gaussian_beam(GridSpec::centered(n, extent), wavelength, center, waist);
        },
        py::arg("n"), py::arg("extent"), py::arg("wavelength"), py::arg("center"), py::arg("waist"));
    m.def(
        "propagate",
        [](const ScalarField& f, double distance, double band_loss_tolerance) {
            return propagate(f, distance, PropagationOptions{band_loss_tolerance});
        },
        py::arg("field"), py::arg("distance"), py::arg("band_loss_tolerance") = 1e-10);
    m.def("apply_thin_lens", &apply_thin_lens, py::arg("field"), py::arg("focal_length"));
    m.def(
        "apply_two_slit_mask",
        [](const ScalarField& f, double slit_width, double slit_separation) {
            return apply_mask(f, make_two_slit_mask(f.grid(), slit_width, slit_separation));
        },
        py::arg("field"), py::arg("slit_width"), py::arg("slit_separation"));
    m.def(
        "intensity_profile",
        [](const ScalarField& h, const ScalarField& v) {
            return intensity_profile(VectorField(h, v));
        },
        py::arg("h"), py::arg("v"));

    // sources
    py::enum_<PdcType>(m, "PdcType").value("TypeI", PdcType::TypeI).value("TypeII", PdcType::TypeII);
    py::class_<PulsePair>(m, "PulsePair")
        .def_readonly("timestamp", &PulsePair::timestamp)
        .def_readonly("signal", &PulsePair::signal)
        .def_readonly("idler", &PulsePair::idler)
        .def_readonly("pdc_type", &PulsePair::pdc_type);
    m.def("generate_pdc_pairs", &generate_pdc_pairs, py::arg("n"), py::arg("pdc_type"),
          py::arg("mean_rate"), py::arg("seed"));
    m.def(
        "beam_splitter_routes",
        [](std::size_t n, double transmittance, std::uint64_t seed) {
            auto rng = derive_rng(seed, "sources.beam_splitter");
            std::vector<bool> transmitted(n);
            for (std::size_t i = 0; i < n; ++i)
                transmitted[i] = beam_splitter(transmittance, rng).port == Port::Transmitted;
            return transmitted;
        },
        py::arg("n"), py::arg("transmittance"), py::arg("seed"),
        "Whole-pulse routing decisions; True = transmitted");

    // detection
    py::class_<DetectorModel>(m, "DetectorModel")
        .def(py::init<>())
        .def_readwrite("efficiency", &DetectorModel::efficiency)
        .def_readwrite("dark_rate", &DetectorModel::dark_rate)
        .def_readwrite("n_bins", &DetectorModel::n_bins)
        .def_readwrite("exposure", &DetectorModel::exposure);
    py::class_<ClickEvent>(m, "ClickEvent")
        .def(py::init<>())
        .def(py::init([](std::uint32_t det, std::uint32_t bin, double t) {
                 return ClickEvent{det, bin, t};
             }),
             py::arg("detector_id"), py::arg("bin"), py::arg("timestamp"))
        .def_readwrite("detector_id", &ClickEvent::detector_id)
        .def_readwrite("bin", &ClickEvent::bin)
        .def_readwrite("timestamp", &ClickEvent::timestamp);
    m.def("sample_clicks", &sample_clicks, py::arg("profile"), py::arg("model"), py::arg("seed"),
          py::arg("detector_id") = 0);
    m.def("sample_click_counts", &sample_click_counts, py::arg("profile"), py::arg("model"),
          py::arg("seed"));
    py::class_<ThresholdPopulation>(m, "ThresholdPopulation")
        .def(py::init<>())
        .def_readwrite("n_electrons", &ThresholdPopulation::n_electrons)
        .def_readwrite("noise_energy_scale", &ThresholdPopulation::noise_energy_scale)
        .def_readwrite("binding_energy", &ThresholdPopulation::binding_energy)
        .def_readwrite("signal_power_coupling", &ThresholdPopulation::signal_power_coupling);
    py::class_<LatencyStats>(m, "LatencyStats")
        .def_readonly("mean", &LatencyStats::mean)
        .def_readonly("p10", &LatencyStats::p10)
        .def_readonly("p50", &LatencyStats::p50)
        .def_readonly("p90", &LatencyStats::p90)
        .def_readonly("clicked_trials", &LatencyStats::clicked_trials)
        .def_readonly("trials", &LatencyStats::trials);
    m.def(
        "first_click_latency",
        [](const ThresholdPopulation& pop, double intensity, std::uint64_t trials,
           std::uint64_t seed, double time_step) {
            LatencyOptions o;
            o.time_step = time_step;
            return first_click_latency(pop, intensity, trials, seed, o);
        },
        py::arg("population"), py::arg("intensity"), py::arg("n_trials"), py::arg("seed"),
        py::arg("time_step") = 0.0);

    // analysis
    py::class_<FringeFit>(m, "FringeFit")
        .def_readonly("k", &FringeFit::k)
        .def_readonly("a", &FringeFit::a)
        .def_readonly("b", &FringeFit::b)
        .def_readonly("phi", &FringeFit::phi)
        .def_readonly("rms_residual", &FringeFit::rms_residual)
        .def_readonly("converged", &FringeFit::converged)
        .def_readonly("iterations", &FringeFit::iterations)
        .def("__repr__", [](const FringeFit& f) {
            return "FringeFit(k=" + std::to_string(f.k) + ", a=" + std::to_string(f.a) +
                   ", b=" + std::to_string(f.b) + ", phi=" + std::to_string(f.phi) + ")";
        });
    m.def("histogram", &histogram, py::arg("clicks"), py::arg("n_bins"));
    m.def(
        "coincidence_filter",
        [](const std::vector<ClickEvent>& s, const std::vector<ClickEvent>& i, double width) {
            return coincidence_filter(s, i, CoincidenceWindow{width});
        },
        py::arg("signal"), py::arg("idler"), py::arg("window_width"));
    m.def(
        "visibility",
        [](const std::vector<double>& profile, double envelope_fraction) {
            return visibility(profile, VisibilityOptions{envelope_fraction});
        },
        py::arg("profile"), py::arg("envelope_fraction") = 0.5);
    m.def(
        "fit_fringe",
        [](const std::vector<double>& counts, const std::vector<double>& positions) {
            return fit_fringe(counts, positions);
        },
        py::arg("counts"), py::arg("positions"));
    m.def(
        "find_nodes",
        [](const std::vector<double>& profile, const std::vector<double>& positions,
           double threshold) {
            return find_nodes(profile, positions, NodeFindOptions{threshold});
        },
        py::arg("profile"), py::arg("positions"), py::arg("threshold") = 0.05);

    // experiments
    py::enum_<IdlerPolarizer>(m, "IdlerPolarizer")
        .value("Vertical", IdlerPolarizer::Vertical)
        .value("Horizontal", IdlerPolarizer::Horizontal)
        .value("Absent", IdlerPolarizer::Absent);
    py::enum_<SlitBlocking>(m, "SlitBlocking")
        .value("NoBlocking", SlitBlocking::None)
        .value("SlitA", SlitBlocking::SlitA)
        .value("SlitB", SlitBlocking::SlitB);

    py::class_<SimGrid>(m, "SimGrid")
        .def(py::init<>())
        .def_readwrite("samples", &SimGrid::samples)
        .def_readwrite("extent", &SimGrid::extent);

    py::class_<EraserConfig>(m, "EraserConfig")
        .def(py::init<>())
        .def_readwrite("wavelength", &EraserConfig::wavelength)
        .def_readwrite("slit_width", &EraserConfig::slit_width)
        .def_readwrite("slit_separation", &EraserConfig::slit_separation)
        .def_readwrite("beam_waist", &EraserConfig::beam_waist)
        .def_readwrite("screen_distance", &EraserConfig::screen_distance)
        .def_readwrite("slit_polarizer_a", &EraserConfig::slit_polarizer_a)
        .def_readwrite("slit_polarizer_b", &EraserConfig::slit_polarizer_b)
        .def_readwrite("idler_polarizer", &EraserConfig::idler_polarizer)
        .def_readwrite("pdc_type", &EraserConfig::pdc_type)
        .def_readwrite("n_pairs", &EraserConfig::n_pairs)
        .def_readwrite("mean_rate", &EraserConfig::mean_rate)
        .def_readwrite("pairing_efficiency", &EraserConfig::pairing_efficiency)
        .def_readwrite("detector_bins", &EraserConfig::detector_bins)
        .def_readwrite("detector_efficiency", &EraserConfig::detector_efficiency)
        .def_readwrite("idler_efficiency", &EraserConfig::idler_efficiency)
        .def_readwrite("dark_rate", &EraserConfig::dark_rate)
        .def_readwrite("detector_halfspan", &EraserConfig::detector_halfspan)
        .def_readwrite("coincidence_window", &EraserConfig::coincidence_window)
        .def_readwrite("signal_path_delay", &EraserConfig::signal_path_delay)
        .def_readwrite("grid", &EraserConfig::grid)
        .def_readwrite("seed", &EraserConfig::seed);

    py::class_<DelayedChoiceConfig>(m, "DelayedChoiceConfig")
        .def(py::init<>())
        .def_readwrite("base", &DelayedChoiceConfig::base)
        .def_readwrite("splitter_transmittance", &DelayedChoiceConfig::splitter_transmittance);

    py::class_<AfsharConfig>(m, "AfsharConfig")
        .def(py::init<>())
        .def_readwrite("wavelength", &AfsharConfig::wavelength)
        .def_readwrite("slit_width", &AfsharConfig::slit_width)
        .def_readwrite("slit_separation", &AfsharConfig::slit_separation)
        .def_readwrite("beam_waist", &AfsharConfig::beam_waist)
        .def_readwrite("dist_slits_grid", &AfsharConfig::dist_slits_grid)
        .def_readwrite("dist_grid_lens", &AfsharConfig::dist_grid_lens)
        .def_readwrite("dist_lens_image", &AfsharConfig::dist_lens_image)
        .def_readwrite("focal_length", &AfsharConfig::focal_length)
        .def_readwrite("imaging_tolerance", &AfsharConfig::imaging_tolerance)
        .def_readwrite("wire_width", &AfsharConfig::wire_width)
        .def_readwrite("wire_count", &AfsharConfig::wire_count)
        .def_readwrite("node_threshold", &AfsharConfig::node_threshold)
        .def_readwrite("slit_blocking", &AfsharConfig::slit_blocking)
        .def_readwrite("grid_present", &AfsharConfig::grid_present)
        .def_readwrite("band_loss_tolerance", &AfsharConfig::band_loss_tolerance)
        .def_readwrite("grid", &AfsharConfig::grid)
        .def_readwrite("seed", &AfsharConfig::seed);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("kind", &ExperimentResult::kind)
        .def_readonly("seed", &ExperimentResult::seed)
        .def_readonly("version", &ExperimentResult::version)
        .def_property_readonly("scalars", &scalars_dict)
        .def_property_readonly("histograms", &histograms_dict)
        .def_property_readonly("fits", &fits_dict)
        .def("to_json", [](const ExperimentResult& r) { return result_to_json(r); });

    m.def("run_eraser", &run_eraser, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_delayed_choice", &run_delayed_choice, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_afshar", &run_afshar, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("afshar_node_positions", &afshar_node_positions, py::arg("config"));

    m.def("emit_default_eraser_config", [] { return emit_config(EraserConfig{}); });
    m.def("parse_eraser_config", [](const std::string& text) {
        return parse_eraser_config_text(text);
    });
}
