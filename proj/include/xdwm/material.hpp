// material.hpp — magnetic/electrical material constants of the ferromagnet.
#pragma once

#include <stdexcept>

#include "xdwm/core.hpp"

namespace xdwm {

/// Material constants of the nanowire ferromagnet. Defaults are the
/// CoFeB-class PMA parameter set used throughout the experiments.
/// Easy axis is +Z everywhere.
struct MaterialParams {
    double A = 1.0e-11;     // exchange stiffness, J/m
    double alpha = 0.02;    // Gilbert damping
    double beta = 0.04;     // non-adiabatic STT coefficient
    double Ms = 6.0e5;      // saturation magnetization, A/m
    double Ku = 0.59e6;     // uniaxial anisotropy, J/m^3
    double P = 0.72;        // spin polarization
    double rho = 2.0e-7;    // electrical resistivity, Ohm m
    double AMRc = 0.014;    // AMR coefficient

    void validate() const {
        if (!(A > 0)) throw std::invalid_argument("MaterialParams: A must be > 0");
        if (!(alpha > 0)) throw std::invalid_argument("MaterialParams: alpha must be > 0");
        if (!(beta >= 0)) throw std::invalid_argument("MaterialParams: beta must be >= 0");
        if (!(Ms > 0)) throw std::invalid_argument("MaterialParams: Ms must be > 0");
        if (!(Ku >= 0)) throw std::invalid_argument("MaterialParams: Ku must be >= 0");
        if (!(P > 0 && P <= 1)) throw std::invalid_argument("MaterialParams: P must be in (0,1]");
        if (!(rho > 0)) throw std::invalid_argument("MaterialParams: rho must be > 0");
        if (!(AMRc >= 0 && AMRc < 1)) throw std::invalid_argument("MaterialParams: AMRc must be in [0,1)");
    }

    /// Film-limit effective anisotropy Ku - mu0 Ms^2 / 2 (J/m^3).
    double effective_anisotropy(const PhysicalConstants& c) const {
        return Ku - 0.5 * c.mu0 * Ms * Ms;
    }

    /// Bloch wall width parameter sqrt(A/K_eff) in m (film limit).
    double wall_width_parameter(const PhysicalConstants& c) const {
        const double keff = effective_anisotropy(c);
        if (keff <= 0) throw std::invalid_argument("wall_width_parameter: K_eff <= 0, no PMA");
        return std::sqrt(A / keff);
    }
};

}  // namespace xdwm
