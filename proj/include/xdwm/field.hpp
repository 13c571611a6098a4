// field.hpp — H_eff = H_ex + H_d + H_anis on the mesh, plus the energy
// functionals each term derives from. All fields in A/m, energies in J.
//
//   H_ex   = (2A / mu0 Ms) lap(m), 6-neighbor Laplacian, free boundaries
//   H_anis = (2Ku / mu0 Ms) (m.z) zhat           (easy axis fixed to +Z)
//   H_d    = Newell-tensor convolution, or the local thin-film shortcut
//            -Ms m_z zhat in DemagMode::local
#pragma once

#include <memory>
#include <vector>

#include "xdwm/core.hpp"
#include "xdwm/demag.hpp"
#include "xdwm/geometry.hpp"
#include "xdwm/material.hpp"

namespace xdwm {

using Field = std::vector<Vec3>;

enum class DemagMode { full, local, none };

struct FieldTerms {
    Field h_ex, h_d, h_anis, h_eff;
};

inline Field exchange_field(const Field& m, const MaterialParams& p, const PhysicalConstants& c,
                            const Mesh& mesh) {
    Field h(mesh.cell_count());
    const double pref = 2.0 * p.A / (c.mu0 * p.Ms);
    const double inv2[3] = {1.0 / (mesh.dx * mesh.dx), 1.0 / (mesh.dy * mesh.dy),
                            1.0 / (mesh.dz * mesh.dz)};
    for (int i = 0; i < mesh.cell_count(); ++i) {
        Vec3 lap{};
        const auto& nb = mesh.neighbors[i];
        for (int axis = 0; axis < 3; ++axis) {
            // missing neighbors contribute zero difference (Neumann)
            if (nb[2 * axis] >= 0) lap += (m[nb[2 * axis]] - m[i]) * inv2[axis];
            if (nb[2 * axis + 1] >= 0) lap += (m[nb[2 * axis + 1]] - m[i]) * inv2[axis];
        }
        h[i] = lap * pref;
    }
    return h;
}

inline Field anisotropy_field(const Field& m, const MaterialParams& p, const PhysicalConstants& c,
                              const Mesh& mesh) {
    Field h(mesh.cell_count());
    const double pref = 2.0 * p.Ku / (c.mu0 * p.Ms);
    for (int i = 0; i < mesh.cell_count(); ++i) h[i] = {0.0, 0.0, pref * m[i].z};
    return h;
}

/// Exchange energy A sum |grad m|^2 V, one term per cell-face link.
inline double exchange_energy(const Field& m, const MaterialParams& p, const Mesh& mesh) {
    const double V = mesh.cell_volume();
    const double inv2[3] = {1.0 / (mesh.dx * mesh.dx), 1.0 / (mesh.dy * mesh.dy),
                            1.0 / (mesh.dz * mesh.dz)};
    double E = 0.0;
    for (int i = 0; i < mesh.cell_count(); ++i) {
        const auto& nb = mesh.neighbors[i];
        for (int axis = 0; axis < 3; ++axis) {
            const int n = nb[2 * axis + 1];  // +axis link counted once
            if (n < 0) continue;
            const Vec3 d = m[n] - m[i];
            E += p.A * V * d.dot(d) * inv2[axis];
        }
    }
    return E;
}

inline double anisotropy_energy(const Field& m, const MaterialParams& p, const Mesh& mesh) {
    const double V = mesh.cell_volume();
    double E = 0.0;
    for (const auto& mi : m) E += p.Ku * (1.0 - mi.z * mi.z) * V;
    return E;
}

inline double demag_energy(const Field& m, const Field& h_d, const MaterialParams& p,
                           const PhysicalConstants& c, const Mesh& mesh) {
    const double V = mesh.cell_volume();
    double E = 0.0;
    for (int i = 0; i < mesh.cell_count(); ++i) E += -0.5 * c.mu0 * p.Ms * m[i].dot(h_d[i]) * V;
    return E;
}

/// Cached field evaluation context for one mesh. Holds the demag operator so
/// repeated evaluations reuse the kernel spectra.
class EffectiveField {
public:
    EffectiveField(const Mesh& mesh, MaterialParams params, PhysicalConstants consts,
                   DemagMode mode = DemagMode::full)
        : mesh_(&mesh), p_(params), c_(consts), mode_(mode) {
        p_.validate();
        c_.validate();
        if (mode_ == DemagMode::full) demag_ = std::make_shared<DemagOperator>(mesh);
    }

    const Mesh& mesh() const { return *mesh_; }
    const MaterialParams& params() const { return p_; }
    const PhysicalConstants& constants() const { return c_; }
    DemagMode demag_mode() const { return mode_; }

    Field demag(const Field& m) const {
        switch (mode_) {
            case DemagMode::full:
                return demag_->apply(m, p_.Ms);
            case DemagMode::local: {
                Field h(mesh_->cell_count());
                for (int i = 0; i < mesh_->cell_count(); ++i) h[i] = {0.0, 0.0, -p_.Ms * m[i].z};
                return h;
            }
            case DemagMode::none:
                return Field(mesh_->cell_count());
        }
        return {};
    }

    FieldTerms effective(const Field& m) const {
        FieldTerms t;
        t.h_ex = exchange_field(m, p_, c_, *mesh_);
        t.h_anis = anisotropy_field(m, p_, c_, *mesh_);
        t.h_d = demag(m);
        t.h_eff.resize(mesh_->cell_count());
        for (int i = 0; i < mesh_->cell_count(); ++i)
            t.h_eff[i] = t.h_ex[i] + t.h_d[i] + t.h_anis[i];
        return t;
    }

    /// H_eff only (no term breakdown); the integrator's inner loop.
    Field effective_only(const Field& m) const {
        Field h = exchange_field(m, p_, c_, *mesh_);
        const double kpref = 2.0 * p_.Ku / (c_.mu0 * p_.Ms);
        if (mode_ == DemagMode::full) {
            Field hd = demag_->apply(m, p_.Ms);
            for (int i = 0; i < mesh_->cell_count(); ++i) {
                h[i] += hd[i];
                h[i].z += kpref * m[i].z;
            }
        } else if (mode_ == DemagMode::local) {
            for (int i = 0; i < mesh_->cell_count(); ++i)
                h[i].z += kpref * m[i].z - p_.Ms * m[i].z;
        } else {
            for (int i = 0; i < mesh_->cell_count(); ++i) h[i].z += kpref * m[i].z;
        }
        return h;
    }

    /// Total energy (J). In local mode the demag shortcut integrates to the
    /// film-limit shape-anisotropy energy mu0 Ms^2 m_z^2 / 2 per volume.
    double energy(const Field& m) const {
        double E = exchange_energy(m, p_, *mesh_) + anisotropy_energy(m, p_, *mesh_);
        if (mode_ == DemagMode::full) {
            E += demag_energy(m, demag(m), p_, c_, *mesh_);
        } else if (mode_ == DemagMode::local) {
            const double V = mesh_->cell_volume();
            for (const auto& mi : m) E += 0.5 * c_.mu0 * p_.Ms * p_.Ms * mi.z * mi.z * V;
        }
        return E;
    }

private:
    const Mesh* mesh_;
    MaterialParams p_;
    PhysicalConstants c_;
    DemagMode mode_;
    std::shared_ptr<DemagOperator> demag_;
};

}  // namespace xdwm
