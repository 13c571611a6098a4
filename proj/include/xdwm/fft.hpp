// fft.hpp — minimal power-of-two complex FFT used by the demag convolution.
// Iterative radix-2 with cached twiddle tables; deterministic and
// thread-safe (no global state).
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace xdwm::detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("Fft: size must be a power of two");
        twiddle_.resize(n / 2);
        const double step = -2.0 * 3.14159265358979323846 / static_cast<double>(n);
        for (std::size_t i = 0; i < n / 2; ++i)
            twiddle_[i] = std::polar(1.0, step * static_cast<double>(i));
        rev_.resize(n);
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
            rev_[i] = r;
        }
    }

    std::size_t size() const { return n_; }

    // In-place transform of data[0..n). inverse applies conjugate twiddles and
    // the 1/n scale.
    void transform(std::complex<double>* data, bool inverse) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t r = rev_[i];
            if (i < r) std::swap(data[i], data[r]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t tstep = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    std::complex<double> w = twiddle_[k * tstep];
                    if (inverse) w = std::conj(w);
                    const std::complex<double> a = data[start + k];
                    const std::complex<double> b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
        }
        if (inverse) {
            const double inv = 1.0 / static_cast<double>(n_);
            for (std::size_t i = 0; i < n_; ++i) data[i] *= inv;
        }
    }

private:
    std::size_t n_;
    std::vector<std::complex<double>> twiddle_;
    std::vector<std::size_t> rev_;
};

}  // namespace xdwm::detail
