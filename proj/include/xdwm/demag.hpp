// demag.hpp — magnetostatic field of the cell-averaged magnetization using
// the analytic cuboid interaction tensor (Newell et al. formulation).
//
//   H_d(r_i) = - sum_j N(r_i - r_j) . (Ms m_j)
//
// The tensor is symmetric in its indices and under r -> -r, and the self
// factors satisfy Nxx + Nyy + Nzz = 1 at zero offset. Fields are evaluated
// either by zero-padded FFT convolution (default) or by direct O(N^2)
// summation (oracle mode for tests).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "xdwm/core.hpp"
#include "xdwm/fft.hpp"
#include "xdwm/geometry.hpp"

namespace xdwm {

namespace detail {

// Newell building blocks. Terms are skipped when the guarding denominator
// vanishes; in every such case the polynomial coefficient vanishes too.
inline double newell_f(double x, double y, double z) {
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    const double R = std::sqrt(x2 + y2 + z2);
    double f = 0.0;
    if (x2 + z2 > 0) f += 0.5 * y * (z2 - x2) * std::asinh(y / std::sqrt(x2 + z2));
    if (x2 + y2 > 0) f += 0.5 * z * (y2 - x2) * std::asinh(z / std::sqrt(x2 + y2));
    if (x != 0.0 && R > 0) f -= x * y * z * std::atan(y * z / (x * R));
    f += (1.0 / 6.0) * (2.0 * x2 - y2 - z2) * R;
    return f;
}

inline double newell_g(double x, double y, double z) {
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    const double R = std::sqrt(x2 + y2 + z2);
    double g = x * y * R / 3.0;
    if (x2 + y2 > 0) g += x * y * z * std::asinh(z / std::sqrt(x2 + y2));
    if (y2 + z2 > 0) g += (y / 6.0) * (3.0 * z2 - y2) * std::asinh(x / std::sqrt(y2 + z2));
    if (x2 + z2 > 0) g += (x / 6.0) * (3.0 * z2 - x2) * std::asinh(y / std::sqrt(x2 + z2));
    if (z != 0.0 && R > 0) g -= (z * z2 / 6.0) * std::atan(x * y / (z * R));
    if (y != 0.0 && R > 0) g -= (z * y2 / 2.0) * std::atan(x * z / (y * R));
    if (x != 0.0 && R > 0) g -= (z * x2 / 2.0) * std::atan(y * z / (x * R));
    return g;
}

// Triple second difference with weights (1,-2,1) per axis.
template <typename F>
double newell_sum(double X, double Y, double Z, double dx, double dy, double dz, F&& f) {
    double s = 0.0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                const double w = (i == 0 ? -2.0 : 1.0) * (j == 0 ? -2.0 : 1.0) * (k == 0 ? -2.0 : 1.0);
                s += w * f(X + i * dx, Y + j * dy, Z + k * dz);
            }
    return s;
}

}  // namespace detail

/// Demag tensor components between two cells displaced by (X, Y, Z).
/// Positive-definite sign convention: H = -N.M, trace(N(0)) = 1.
inline double demag_nxx(double X, double Y, double Z, double dx, double dy, double dz) {
    const double pi4v = 4.0 * 3.14159265358979323846 * dx * dy * dz;
    return -detail::newell_sum(X, Y, Z, dx, dy, dz, detail::newell_f) / pi4v;
}
inline double demag_nxy(double X, double Y, double Z, double dx, double dy, double dz) {
    const double pi4v = 4.0 * 3.14159265358979323846 * dx * dy * dz;
    return -detail::newell_sum(X, Y, Z, dx, dy, dz, detail::newell_g) / pi4v;
}

/// Full symmetric tensor by axis permutation: {xx, yy, zz, xy, xz, yz}.
inline std::array<double, 6> demag_tensor(double X, double Y, double Z, double dx, double dy,
                                          double dz) {
    return {demag_nxx(X, Y, Z, dx, dy, dz), demag_nxx(Y, X, Z, dy, dx, dz),
            demag_nxx(Z, Y, X, dz, dy, dx), demag_nxy(X, Y, Z, dx, dy, dz),
            demag_nxy(X, Z, Y, dx, dz, dy), demag_nxy(Y, Z, X, dy, dz, dx)};
}

/// FFT-accelerated demag field evaluator bound to one mesh. The padded-grid
/// kernel spectra are precomputed at construction; apply() is then pure.
class DemagOperator {
public:
    explicit DemagOperator(const Mesh& mesh) : mesh_(&mesh) {
        px_ = detail::next_pow2(std::max<std::size_t>(1, 2 * mesh.nx - 1));
        py_ = detail::next_pow2(std::max<std::size_t>(1, 2 * mesh.ny - 1));
        pz_ = mesh.nz == 1 ? 1 : detail::next_pow2(2 * mesh.nz - 1);
        fx_ = std::make_shared<detail::Fft>(px_);
        fy_ = std::make_shared<detail::Fft>(py_);
        if (pz_ > 1) fz_ = std::make_shared<detail::Fft>(pz_);

        const std::size_t np = px_ * py_ * pz_;
        for (auto& k : kernel_) k.assign(np, {0.0, 0.0});

        for (int oz = -(mesh.nz - 1); oz <= mesh.nz - 1; ++oz)
            for (int oy = -(mesh.ny - 1); oy <= mesh.ny - 1; ++oy)
                for (int ox = -(mesh.nx - 1); ox <= mesh.nx - 1; ++ox) {
                    const auto n = demag_tensor(ox * mesh.dx, oy * mesh.dy, oz * mesh.dz,
                                                mesh.dx, mesh.dy, mesh.dz);
                    const std::size_t gi = wrap(ox, px_) + px_ * (wrap(oy, py_) + py_ * wrap(oz, pz_));
                    for (int c = 0; c < 6; ++c) kernel_[c][gi] = {n[c], 0.0};
                }
        for (auto& k : kernel_) fft3(k.data(), false);
    }

    /// H_d (A/m) on occupied cells for reduced magnetization m and Ms.
    std::vector<Vec3> apply(const std::vector<Vec3>& m, double Ms) const {
        const Mesh& mesh = *mesh_;
        const std::size_t np = px_ * py_ * pz_;
        std::array<std::vector<std::complex<double>>, 3> M;
        for (auto& c : M) c.assign(np, {0.0, 0.0});
        for (int cidx = 0; cidx < mesh.cell_count(); ++cidx) {
            const auto ijk = mesh.cell_ijk(cidx);
            const std::size_t gi = ijk[0] + px_ * (ijk[1] + py_ * static_cast<std::size_t>(ijk[2]));
            M[0][gi] = {Ms * m[cidx].x, 0.0};
            M[1][gi] = {Ms * m[cidx].y, 0.0};
            M[2][gi] = {Ms * m[cidx].z, 0.0};
        }
        for (auto& c : M) fft3(c.data(), false);

        std::array<std::vector<std::complex<double>>, 3> H;
        for (auto& c : H) c.assign(np, {0.0, 0.0});
        for (std::size_t i = 0; i < np; ++i) {
            const auto kxx = kernel_[0][i], kyy = kernel_[1][i], kzz = kernel_[2][i];
            const auto kxy = kernel_[3][i], kxz = kernel_[4][i], kyz = kernel_[5][i];
            H[0][i] = -(kxx * M[0][i] + kxy * M[1][i] + kxz * M[2][i]);
            H[1][i] = -(kxy * M[0][i] + kyy * M[1][i] + kyz * M[2][i]);
            H[2][i] = -(kxz * M[0][i] + kyz * M[1][i] + kzz * M[2][i]);
        }
        for (auto& c : H) fft3(c.data(), true);

        std::vector<Vec3> out(mesh.cell_count());
        for (int cidx = 0; cidx < mesh.cell_count(); ++cidx) {
            const auto ijk = mesh.cell_ijk(cidx);
            const std::size_t gi = ijk[0] + px_ * (ijk[1] + py_ * static_cast<std::size_t>(ijk[2]));
            out[cidx] = {H[0][gi].real(), H[1][gi].real(), H[2][gi].real()};
        }
        return out;
    }

private:
    static std::size_t wrap(int o, std::size_t n) {
        return o >= 0 ? static_cast<std::size_t>(o) : n + o;
    }

    void fft3(std::complex<double>* d, bool inverse) const {
        // x lines are contiguous
        for (std::size_t k = 0; k < pz_; ++k)
            for (std::size_t j = 0; j < py_; ++j) fx_->transform(d + px_ * (j + py_ * k), inverse);
        // y lines, stride px
        std::vector<std::complex<double>> tmp(std::max(py_, pz_));
        for (std::size_t k = 0; k < pz_; ++k)
            for (std::size_t i = 0; i < px_; ++i) {
                for (std::size_t j = 0; j < py_; ++j) tmp[j] = d[i + px_ * (j + py_ * k)];
                fy_->transform(tmp.data(), inverse);
                for (std::size_t j = 0; j < py_; ++j) d[i + px_ * (j + py_ * k)] = tmp[j];
            }
        if (pz_ > 1) {
            for (std::size_t j = 0; j < py_; ++j)
                for (std::size_t i = 0; i < px_; ++i) {
                    for (std::size_t k = 0; k < pz_; ++k) tmp[k] = d[i + px_ * (j + py_ * k)];
                    fz_->transform(tmp.data(), inverse);
                    for (std::size_t k = 0; k < pz_; ++k) d[i + px_ * (j + py_ * k)] = tmp[k];
                }
        }
    }

    const Mesh* mesh_;
    std::size_t px_ = 1, py_ = 1, pz_ = 1;
    std::shared_ptr<detail::Fft> fx_, fy_, fz_;
    std::array<std::vector<std::complex<double>>, 6> kernel_;
};

/// Direct O(N^2) pairwise summation, the oracle route for the FFT path.
inline std::vector<Vec3> demag_field_direct(const std::vector<Vec3>& m, double Ms, const Mesh& mesh) {
    std::vector<Vec3> out(mesh.cell_count());
    for (int a = 0; a < mesh.cell_count(); ++a) {
        const auto ia = mesh.cell_ijk(a);
        Vec3 h{};
        for (int b = 0; b < mesh.cell_count(); ++b) {
            const auto ib = mesh.cell_ijk(b);
            const auto n = demag_tensor((ia[0] - ib[0]) * mesh.dx, (ia[1] - ib[1]) * mesh.dy,
                                        (ia[2] - ib[2]) * mesh.dz, mesh.dx, mesh.dy, mesh.dz);
            const Vec3 M = m[b] * Ms;
            h.x -= n[0] * M.x + n[3] * M.y + n[4] * M.z;
            h.y -= n[3] * M.x + n[1] * M.y + n[5] * M.z;
            h.z -= n[4] * M.x + n[5] * M.y + n[2] * M.z;
        }
        out[a] = h;
    }
    return out;
}

}  // namespace xdwm
