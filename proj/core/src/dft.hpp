#ifndef WEGNERLAB_SRC_DFT_HPP
#define WEGNERLAB_SRC_DFT_HPP

#include <complex>
#include <vector>

namespace wegnerlab::internal {

/// Normalized multi-dimensional inverse DFT (row-major layout, last axis
/// fastest):
///   out[m] = (1 / prod dims) * sum_n in[n] * exp(+2*pi*i * sum_j m_j n_j / dims_j)
std::vector<std::complex<double>> inverse_dft(
    const std::vector<std::complex<double>>& in, const std::vector<int>& dims);

}  // namespace wegnerlab::internal

#endif  // WEGNERLAB_SRC_DFT_HPP
