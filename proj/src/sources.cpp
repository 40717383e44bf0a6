#include "fringekit/sources.hpp"

#include <stdexcept>

#include "fringekit/errors.hpp"
#include "fringekit/rng.hpp"

namespace fringekit {

std::vector<PulsePair> generate_pdc_pairs(std::size_t n, PdcType type, double mean_rate,
                                          std::uint64_t seed) {
    if (!(mean_rate > 0.0)) throw GeometryError("pdc_pairs: mean_rate must be > 0");
    auto rng = derive_rng(seed, "sources.pairs");
    std::exponential_distribution<double> gap(mean_rate);

    std::vector<PulsePair> pairs;
    pairs.reserve(n);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = gap(rng);
        while (dt <= 0.0) dt = gap(rng);  // keep timestamps strictly increasing
        t += dt;
        PulsePair p;
        p.timestamp = t;
        p.signal = JonesVector::vertical();
        p.idler = (type == PdcType::TypeI) ? JonesVector::horizontal() : JonesVector::vertical();
        p.pdc_type = type;
        pairs.push_back(p);
    }
    return pairs;
}

RoutingDecision beam_splitter(double transmittance, std::mt19937_64& rng) {
    if (transmittance < 0.0 || transmittance > 1.0)
        throw GeometryError("beam_splitter: transmittance must lie in [0,1]");
    const double u = uniform01(rng);
    return {u < transmittance ? Port::Transmitted : Port::Reflected};
}

}  // namespace fringekit
