#ifndef EULER1D_FFT_HPP
#define EULER1D_FFT_HPP

#include <complex>
#include <vector>

namespace euler1d::fft {

/// Half-complex DFT of N real samples: returns c_k = (1/N) sum_j f_j e^{-2pi i jk/N}
/// for k = 0..N/2. Plans are cached per size; safe to call from multiple threads.
std::vector<std::complex<double>> forward(const std::vector<double>& values);

/// Inverse of forward(): synthesizes N real samples from half-complex coefficients.
std::vector<double> inverse(const std::vector<std::complex<double>>& coeffs, int n);

}  // namespace euler1d::fft

#endif
