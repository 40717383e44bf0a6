#pragma once

#include <complex>
#include <vector>

namespace fringekit::detail {

/// In-place unnormalized complex DFT (FFTW-backed); inverse leaves the caller
/// to divide by n.
void fft_in_place(std::vector<std::complex<double>>& data, bool forward);

}  // namespace fringekit::detail
