#include "fringekit/polarization.hpp"

#include <cmath>
#include <numbers>

namespace fringekit {

namespace {
constexpr double kPi = std::numbers::pi;
}

JonesVector JonesVector::linear(double theta) {
    PolarizerAngle a(theta);
    return {a.axis_h(), a.axis_v()};
}

PolarizerAngle::PolarizerAngle(double radians) : theta_(radians) {
    if (!std::isfinite(theta_)) theta_ = 0.0;
    // canonicalize into (-pi, pi]
    theta_ = std::fmod(theta_, 2.0 * kPi);
    if (theta_ <= -kPi) theta_ += 2.0 * kPi;
    if (theta_ > kPi) theta_ -= 2.0 * kPi;
}

// sin/cos evaluated on |theta| so that opposite angles give bit-exact
// opposite/equal axis components, which the +-pi/4 daughter sign structure
// relies on.
double PolarizerAngle::axis_h() const {
    return std::copysign(std::sin(std::fabs(theta_)), theta_);
}

double PolarizerAngle::axis_v() const {
    return std::cos(std::fabs(theta_));
}

double intensity(const JonesVector& j) {
    return std::norm(j.e_h) + std::norm(j.e_v);
}

JonesVector apply_polarizer(const JonesVector& j, PolarizerAngle theta) {
    const double uh = theta.axis_h();
    const double uv = theta.axis_v();
    const complexd along = j.e_h * uh + j.e_v * uv;
    return {along * uh, along * uv};
}

std::pair<complexd, complexd> decompose(const JonesVector& j) {
    return {j.e_h, j.e_v};
}

}  // namespace fringekit
