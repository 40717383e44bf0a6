#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fringekit/polarization.hpp"

namespace fringekit {

enum class PdcType { TypeI, TypeII };

/// One correlated emission event: a signal pulse headed for the slits and its
/// idler partner. Type-I pairs carry orthogonal polarization modes
/// (anticorrelated), Type-II parallel (correlated).
struct PulsePair {
    double timestamp = 0.0;  // seconds
    JonesVector signal;
    JonesVector idler;
    PdcType pdc_type = PdcType::TypeI;
};

enum class Port { Transmitted, Reflected };

/// Whole-pulse beam-splitter outcome; a pulse is never divided.
struct RoutingDecision {
    Port port = Port::Transmitted;
};

/// n pulse pairs with exponentially distributed inter-arrival times at the
/// given mean rate. Signal polarization is vertical (the mother mode); the
/// idler is horizontal for Type-I, vertical for Type-II. Fully determined by
/// the seed; timestamps are strictly increasing.
std::vector<PulsePair> generate_pdc_pairs(std::size_t n, PdcType type, double mean_rate,
                                          std::uint64_t seed);

/// Bernoulli(transmittance) whole-pulse routing.
RoutingDecision beam_splitter(double transmittance, std::mt19937_64& rng);

}  // namespace fringekit
