// llg.hpp — time integration of the Landau-Lifshitz-Gilbert equation with
// Zhang-Li spin-transfer torque on a spatially varying current map.
//
// Gilbert form (current locally along u):
//   dm/dt = -g' m x H + a m x dm/dt - (u.grad)m + b m x (u.grad)m,  g' = gamma mu0
// integrated in the algebraically equivalent explicit form
//   (1+a^2) dm/dt = -g' m x H - a g' m x (m x H)
//                   - (1+ab) (u.grad)m + (b-a) m x (u.grad)m
// with an adaptive Cash-Karp 5(4) embedded pair and renormalization after
// accepted steps.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "xdwm/core.hpp"
#include "xdwm/field.hpp"
#include "xdwm/geometry.hpp"
#include "xdwm/material.hpp"

namespace xdwm {

enum class SttConvention {
    half,  // u = muB J P / (2 e Ms), the Eq.-1 sidebar form
    full,  // u = muB J P / (e Ms); reproduces the closed-form wall velocity
};

/// |u| (m/s) for a scalar current density (A/m^2).
inline double stt_velocity_u(double j, const MaterialParams& p, const PhysicalConstants& c,
                             SttConvention conv) {
    const double base = c.muB * j * p.P / (c.e * p.Ms);
    return conv == SttConvention::half ? 0.5 * base : base;
}

inline Vec3 stt_velocity_u(const Vec3& j, const MaterialParams& p, const PhysicalConstants& c,
                           SttConvention conv) {
    return j * stt_velocity_u(1.0, p, c, conv);
}

/// Current density per occupied cell plus the injection bookkeeping that
/// produced it. Cells of high-impedance branches carry j = 0.
struct CurrentMap {
    Field j;  // A/m^2 per cell; empty means zero current everywhere
    double total_current = 0.0;  // A, as injected at the source terminal

    bool active() const { return !j.empty() && total_current != 0.0; }
};

struct SolverConfig {
    double dt_init = 1e-13;      // s
    double tolerance = 1e-5;     // local error per step on m (dimensionless)
    double max_dt = 2e-11;       // s
    int renormalize_every = 1;   // accepted steps between renormalizations
    SttConvention stt_convention = SttConvention::full;
    bool precession = true;

    void validate() const {
        if (!(dt_init > 0)) throw std::invalid_argument("SolverConfig: dt_init must be > 0");
        if (!(tolerance > 0)) throw std::invalid_argument("SolverConfig: tolerance must be > 0");
    }
};

struct SimState {
    double time = 0.0;
    Field m;
    long steps = 0;
};

struct RelaxOptions {
    double torque_tol = 1e-4;       // max |m x H| / Ms
    long max_steps = 400000;
    bool precession = false;        // gradient flow by default
    double alpha_override = 0.5;    // damping used during relaxation only
};

struct RelaxResult {
    SimState state;
    bool converged = false;
    double final_torque = 0.0;  // max |m x H| / Ms at exit
    long steps_used = 0;
};

class Simulator {
public:
    Simulator(const EffectiveField& field, SolverConfig config)
        : field_(&field), cfg_(config), dt_(config.dt_init) {
        cfg_.validate();
        u_pref_ = stt_velocity_u(1.0, field.params(), field.constants(), cfg_.stt_convention);
    }

    const SolverConfig& config() const { return cfg_; }
    const EffectiveField& field() const { return *field_; }

    void set_current(CurrentMap cm) { current_ = std::move(cm); }
    void clear_current() { current_ = CurrentMap{}; }
    const CurrentMap& current() const { return current_; }

    double dt() const { return dt_; }
    void reset_dt() { dt_ = cfg_.dt_init; }

    /// dm/dt of the explicit form, orthogonality-projected per cell.
    Field rhs(const Field& m) const { return rhs(m, cfg_.precession, field_->params().alpha); }

    Field rhs(const Field& m, bool precession, double alpha) const {
        const Mesh& mesh = field_->mesh();
        const auto& p = field_->params();
        const double g = field_->constants().gamma * field_->constants().mu0;
        const double inv1a2 = 1.0 / (1.0 + alpha * alpha);
        const double cp = -g * inv1a2;
        const double cd = -g * alpha * inv1a2;
        const double cu = -(1.0 + alpha * p.beta) * inv1a2;
        const double cb = (p.beta - alpha) * inv1a2;
        const bool stt = current_.active();

        Field h = field_->effective_only(m);
        Field d(mesh.cell_count());
        for (int i = 0; i < mesh.cell_count(); ++i) {
            const Vec3 mxh = cross(m[i], h[i]);
            Vec3 v = cd * cross(m[i], mxh);
            if (precession) v += cp * mxh;
            if (stt) {
                const Vec3 u = current_.j[i] * u_pref_;
                if (u.x != 0.0 || u.y != 0.0 || u.z != 0.0) {
                    const Vec3 gm = directional_gradient(m, i, u);
                    v += cu * gm + cb * cross(m[i], gm);
                }
            }
            // keep dm/dt exactly orthogonal to m against roundoff
            v -= m[i] * (v.dot(m[i]) / m[i].dot(m[i]));
            d[i] = v;
        }
        return d;
    }

    /// One adaptive step; state.m is renormalized per config. Throws
    /// StepSizeUnderflow when dt falls below 1e-18 s.
    void step(SimState& state) { step_impl(state, cfg_.precession, field_->params().alpha); }

    /// Advances to exactly state.time + duration.
    void run_for(SimState& state, double duration,
                 const std::function<void(const SimState&)>& on_step = nullptr) {
        const double t_end = state.time + duration;
        while (state.time < t_end - 1e-24) {
            const double dt_before = dt_;
            const bool clipped = dt_ > t_end - state.time;
            if (clipped) dt_ = t_end - state.time;
            step(state);
            if (clipped && last_rejections_ == 0 && dt_ < dt_before)
                dt_ = std::min(dt_before, cfg_.max_dt);
            if (on_step) on_step(state);
        }
    }

    /// Max cell torque |m x H_eff| / Ms, the relax convergence metric.
    double max_torque(const Field& m) const {
        Field h = field_->effective_only(m);
        double t = 0.0;
        for (size_t i = 0; i < m.size(); ++i) t = std::max(t, cross(m[i], h[i]).norm());
        return t / field_->params().Ms;
    }

    /// Damped relaxation (no current) until the torque criterion is met.
    /// Fixed points are those of the physical dynamics; the path uses the
    /// override damping and optional precession for speed.
    RelaxResult relax(SimState state, const RelaxOptions& opt = {}) {
        CurrentMap saved = std::move(current_);
        current_ = CurrentMap{};
        RelaxResult r;
        const long check_every = 10;
        dt_ = cfg_.dt_init;
        long used = 0;
        while (true) {
            r.final_torque = max_torque(state.m);
            if (r.final_torque < opt.torque_tol) {
                r.converged = true;
                break;
            }
            if (used >= opt.max_steps) break;
            for (long s = 0; s < check_every && used < opt.max_steps; ++s, ++used)
                step_impl(state, opt.precession, opt.alpha_override);
        }
        dt_ = cfg_.dt_init;
        current_ = std::move(saved);
        r.state = std::move(state);
        r.steps_used = used;
        return r;
    }

private:
    Vec3 directional_gradient(const Field& m, int i, const Vec3& u) const {
        const Mesh& mesh = field_->mesh();
        const auto& nb = mesh.neighbors[i];
        const double d[3] = {mesh.dx, mesh.dy, mesh.dz};
        const double uc[3] = {u.x, u.y, u.z};
        Vec3 g{};
        for (int axis = 0; axis < 3; ++axis) {
            if (uc[axis] == 0.0) continue;
            const int lo = nb[2 * axis], hi = nb[2 * axis + 1];
            Vec3 dmda{};
            if (lo >= 0 && hi >= 0)
                dmda = (m[hi] - m[lo]) / (2.0 * d[axis]);
            else if (hi >= 0)
                dmda = (m[hi] - m[i]) / d[axis];
            else if (lo >= 0)
                dmda = (m[i] - m[lo]) / d[axis];
            g += dmda * uc[axis];
        }
        return g;
    }

    void step_impl(SimState& state, bool precession, double alpha) {
        // Cash-Karp 5(4)
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 3.0 / 10, a42 = -9.0 / 10, a43 = 6.0 / 5;
        static constexpr double a51 = -11.0 / 54, a52 = 5.0 / 2, a53 = -70.0 / 27, a54 = 35.0 / 27;
        static constexpr double a61 = 1631.0 / 55296, a62 = 175.0 / 512, a63 = 575.0 / 13824,
                                a64 = 44275.0 / 110592, a65 = 253.0 / 4096;
        static constexpr double b1 = 37.0 / 378, b3 = 250.0 / 621, b4 = 125.0 / 594,
                                b6 = 512.0 / 1771;
        static constexpr double e1 = 37.0 / 378 - 2825.0 / 27648,
                                e3 = 250.0 / 621 - 18575.0 / 48384,
                                e4 = 125.0 / 594 - 13525.0 / 55296, e5 = -277.0 / 14336,
                                e6 = 512.0 / 1771 - 1.0 / 4;

        const int n = static_cast<int>(state.m.size());
        const Field k1 = rhs(state.m, precession, alpha);
        Field y(n);
        last_rejections_ = 0;
        while (true) {
            if (dt_ < 1e-18)
                throw Error(ErrorCode::StepSizeUnderflow,
                            "step size underflow: dt < 1e-18 s (stiff or misconfigured system)");
            const double h = dt_;

            for (int i = 0; i < n; ++i) y[i] = state.m[i] + (h * a21) * k1[i];
            const Field k2 = rhs(y, precession, alpha);
            for (int i = 0; i < n; ++i) y[i] = state.m[i] + h * (a31 * k1[i] + a32 * k2[i]);
            const Field k3 = rhs(y, precession, alpha);
            for (int i = 0; i < n; ++i)
                y[i] = state.m[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            const Field k4 = rhs(y, precession, alpha);
            for (int i = 0; i < n; ++i)
                y[i] = state.m[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            const Field k5 = rhs(y, precession, alpha);
            for (int i = 0; i < n; ++i)
                y[i] = state.m[i] +
                       h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            const Field k6 = rhs(y, precession, alpha);

            double err = 0.0;
            for (int i = 0; i < n; ++i) {
                const Vec3 e =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
                err = std::max({err, std::abs(e.x), std::abs(e.y), std::abs(e.z)});
            }
            const double ratio = err / cfg_.tolerance;
            if (ratio <= 1.0) {
                for (int i = 0; i < n; ++i)
                    y[i] = state.m[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b6 * k6[i]);
                state.m = std::move(y);
                state.time += h;
                state.steps += 1;
                if (cfg_.renormalize_every > 0 && state.steps % cfg_.renormalize_every == 0)
                    for (auto& mi : state.m) mi = mi.normalized();
                const double grow = ratio > 0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
                dt_ = std::min(cfg_.max_dt, h * std::min(5.0, std::max(0.2, grow)));
                return;
            }
            ++last_rejections_;
            dt_ = h * std::max(0.2, 0.9 * std::pow(ratio, -0.25));
        }
    }

    const EffectiveField* field_;
    SolverConfig cfg_;
    CurrentMap current_;
    double u_pref_ = 0.0;
    double dt_ = 0.0;
    int last_rejections_ = 0;
};

}  // namespace xdwm
