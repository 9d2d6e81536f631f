// fft.cpp  --  iterative Cooley-Tukey, table-driven twiddles

#include "qpl/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qpl::fft {

void transform_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("fft: length must be a power of two");
    if (n == 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    std::vector<std::complex<double>> W(n / 2);
    const double w = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        W[k] = {std::cos(w * static_cast<double>(k)), std::sin(w * static_cast<double>(k))};

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> u = a[blk + k];
                const std::complex<double> v = a[blk + k + half] * W[k * stride];
                a[blk + k] = u + v;
                a[blk + k + half] = u - v;
            }
        }
    }
}

}  // namespace qpl::fft
