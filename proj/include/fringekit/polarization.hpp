#pragma once

#include <complex>

namespace fringekit {

using complexd = std::complex<double>;

/// Fully polarized transverse field as a pair of complex amplitudes in the
/// (horizontal, vertical) basis. Angles throughout the library are measured
/// from the vertical axis, counterclockwise positive.
struct JonesVector {
    complexd e_h{0.0, 0.0};
    complexd e_v{0.0, 0.0};

    JonesVector() = default;
    JonesVector(complexd h, complexd v) : e_h(h), e_v(v) {}

    /// Unit-intensity linear state at angle `theta` from the vertical.
    static JonesVector linear(double theta);
    static JonesVector horizontal() { return {1.0, 0.0}; }
    static JonesVector vertical() { return {0.0, 1.0}; }

    JonesVector operator+(const JonesVector& o) const { return {e_h + o.e_h, e_v + o.e_v}; }
    JonesVector operator-(const JonesVector& o) const { return {e_h - o.e_h, e_v - o.e_v}; }
    JonesVector operator*(complexd s) const { return {s * e_h, s * e_v}; }
};

/// Linear polarizer axis, radians from the vertical, canonicalized to (-pi, pi].
class PolarizerAngle {
  public:
    explicit PolarizerAngle(double radians);
    double radians() const { return theta_; }

    /// Unit axis direction (h, v) components. Computed symmetrically so that
    /// axis(theta).first == -axis(-theta).first holds bit-exactly.
    double axis_h() const;
    double axis_v() const;

  private:
    double theta_;
};

/// |e_h|^2 + |e_v|^2.
double intensity(const JonesVector& j);

/// Projection of `j` onto the polarizer axis: (j . u) u with u = (sin t, cos t).
/// Ideal element: lossless along the axis, perfect extinction across it.
JonesVector apply_polarizer(const JonesVector& j, PolarizerAngle theta);

/// The (horizontal, vertical) component pair; reconstruction is exact.
std::pair<complexd, complexd> decompose(const JonesVector& j);

}  // namespace fringekit
