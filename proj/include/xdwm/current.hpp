// current.hpp — builds the spatially varying current-density map for a set
// of driven wires by solving the potential problem on the conductor mask.
//
// Terminal faces are equipotential contacts (merged super-nodes). Idle wires
// keep their terminals open: dead-end material (X-Cell fins, gap tracks of
// high-impedance Y wires) carries only the local spreading currents of the
// Laplace solution, and disconnected components carry exactly zero. Current
// spreading into the wide X-Cell region is what dilutes the drive there.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <queue>
#include <vector>

#include "xdwm/core.hpp"
#include "xdwm/geometry.hpp"
#include "xdwm/llg.hpp"

namespace xdwm {

struct DriveSpec {
    int wire = 0;          // index into mesh.wires
    double current = 0.0;  // A; positive flows terminal_a -> terminal_b
                           // (X wires: +x, left to right; Y wires: -y, top to bottom)
};

/// Fast path: uniform density along one straight wire, zero elsewhere.
/// Valid for notch-free rectangular wires only.
inline CurrentMap uniform_current_map(const Mesh& mesh, int wire_idx, double j_density) {
    const Wire& w = mesh.wires.at(wire_idx);
    CurrentMap cm;
    cm.j.assign(mesh.cell_count(), Vec3{});
    const Vec3 dir = w.axis == Axis::X ? Vec3{1, 0, 0} : Vec3{0, -1, 0};
    for (int c : mesh.wire_cells(w)) cm.j[c] = dir * j_density;
    const double area = w.axis == Axis::X ? (w.hi[1] - w.lo[1]) * mesh.dy * mesh.nz * mesh.dz
                                          : (w.hi[0] - w.lo[0]) * mesh.dx * mesh.nz * mesh.dz;
    cm.total_current = j_density * area;
    return cm;
}

/// Potential solve over the occupied mask for the given drives.
/// Throws DisconnectedTerminals when a drive's source and sink cannot reach
/// each other through occupied cells.
inline CurrentMap solve_current_map(const Mesh& mesh, const std::vector<DriveSpec>& drives) {
    const int nc = mesh.cell_count();
    CurrentMap cm;
    cm.j.assign(nc, Vec3{});
    if (drives.empty()) return cm;

    // Node ids: terminal faces collapse to super-nodes.
    std::vector<int> node(nc, -1);
    struct Term {
        int node;
        double inject;
    };
    std::vector<Term> terms;
    int next_node = 0;
    for (const auto& d : drives) {
        const Wire& w = mesh.wires.at(d.wire);
        const int src = next_node++;
        const int snk = next_node++;
        for (int c : w.terminal_a) node[c] = src;
        for (int c : w.terminal_b) node[c] = snk;
        terms.push_back({src, d.current});
        terms.push_back({snk, -d.current});
        cm.total_current += std::abs(d.current);
    }
    for (int c = 0; c < nc; ++c)
        if (node[c] < 0) node[c] = next_node++;
    const int nn = next_node;

    // Link conductances sigma * A / len with sigma = 1 (cancels in j scaling
    // for fixed injected current).
    const double area[3] = {mesh.dy * mesh.dz, mesh.dx * mesh.dz, mesh.dx * mesh.dy};
    const double len[3] = {mesh.dx, mesh.dy, mesh.dz};

    // Connected components over nodes.
    std::vector<std::vector<std::pair<int, double>>> adj(nn);
    for (int c = 0; c < nc; ++c)
        for (int axis = 0; axis < 3; ++axis) {
            const int nbr = mesh.neighbors[c][2 * axis + 1];
            if (nbr < 0) continue;
            const int a = node[c], b = node[nbr];
            if (a == b) continue;
            const double g = area[axis] / len[axis];
            adj[a].push_back({b, g});
            adj[b].push_back({a, g});
        }
    std::vector<int> comp(nn, -1);
    int ncomp = 0;
    for (int s = 0; s < nn; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto& [v, g] : adj[u])
                if (comp[v] < 0) {
                    comp[v] = ncomp;
                    q.push(v);
                }
        }
        ++ncomp;
    }
    for (size_t t = 0; t + 1 < terms.size(); t += 2)
        if (comp[terms[t].node] != comp[terms[t + 1].node])
            throw Error(ErrorCode::DisconnectedTerminals,
                        "drive source and sink are not connected through the conductor");

    // One grounded node per driven component.
    std::vector<char> comp_driven(ncomp, 0);
    for (const auto& t : terms) comp_driven[comp[t.node]] = 1;
    std::vector<int> ground(ncomp, -1);
    for (const auto& t : terms)
        if (ground[comp[t.node]] < 0) ground[comp[t.node]] = t.node;

    // Reduced unknown indices (driven components, non-ground nodes).
    std::vector<int> unk(nn, -1);
    int nu = 0;
    for (int u = 0; u < nn; ++u)
        if (comp_driven[comp[u]] && ground[comp[u]] != u) unk[u] = nu++;

    Eigen::SparseMatrix<double> L(nu, nu);
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu);
    std::vector<double> diag(nu, 0.0);
    for (int c = 0; c < nc; ++c)
        for (int axis = 0; axis < 3; ++axis) {
            const int nbr = mesh.neighbors[c][2 * axis + 1];
            if (nbr < 0) continue;
            const int a = node[c], b = node[nbr];
            if (a == b || !comp_driven[comp[a]]) continue;
            const double g = area[axis] / len[axis];
            const int ia = unk[a], ib = unk[b];
            if (ia >= 0) diag[ia] += g;
            if (ib >= 0) diag[ib] += g;
            if (ia >= 0 && ib >= 0) {
                trip.emplace_back(ia, ib, -g);
                trip.emplace_back(ib, ia, -g);
            }
        }
    for (int i = 0; i < nu; ++i) trip.emplace_back(i, i, diag[i]);
    L.setFromTriplets(trip.begin(), trip.end());
    for (const auto& t : terms)
        if (unk[t.node] >= 0) rhs[unk[t.node]] += t.inject;

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::SingularSystem, "current map potential solve failed");
    Eigen::VectorXd phi_u = solver.solve(rhs);

    auto phi = [&](int nodeid) -> double {
        const int iu = unk[nodeid];
        return iu >= 0 ? phi_u[iu] : 0.0;
    };

    // Cell current density: average of the two face currents per axis.
    for (int c = 0; c < nc; ++c) {
        if (!comp_driven[comp[node[c]]]) continue;
        double jc[3];
        for (int axis = 0; axis < 3; ++axis) {
            const double g = area[axis] / len[axis];
            double flow = 0.0;  // along +axis
            const int lo = mesh.neighbors[c][2 * axis];
            const int hi = mesh.neighbors[c][2 * axis + 1];
            if (lo >= 0 && node[lo] != node[c]) flow += g * (phi(node[lo]) - phi(node[c]));
            if (hi >= 0 && node[hi] != node[c]) flow += g * (phi(node[c]) - phi(node[hi]));
            jc[axis] = 0.5 * flow / area[axis];
        }
        cm.j[c] = {jc[0], jc[1], jc[2]};
    }
    return cm;
}

/// Rescales a solved map to a different drive amplitude (linearity).
inline CurrentMap scale_current_map(CurrentMap cm, double factor) {
    for (auto& v : cm.j) v *= factor;
    cm.total_current *= std::abs(factor);
    return cm;
}

/// KCL residual per node of a map, for validation: max over cells of the
/// net in/out current imbalance relative to the injected current.
inline double divergence_residual(const Mesh& mesh, const CurrentMap& cm,
                                  const std::vector<int>& exclude_cells = {}) {
    std::vector<char> skip(mesh.cell_count(), 0);
    for (int c : exclude_cells) skip[c] = 1;
    const double area[3] = {mesh.dy * mesh.dz, mesh.dx * mesh.dz, mesh.dx * mesh.dy};
    double worst = 0.0;
    for (int c = 0; c < mesh.cell_count(); ++c) {
        if (skip[c]) continue;
        double net = 0.0;
        bool boundary = false;
        for (int axis = 0; axis < 3; ++axis) {
            const int lo = mesh.neighbors[c][2 * axis];
            const int hi = mesh.neighbors[c][2 * axis + 1];
            if (lo < 0 || hi < 0) {
                boundary = true;
                continue;
            }
            const double jlo = 0.5 * ((&cm.j[lo].x)[axis] + (&cm.j[c].x)[axis]);
            const double jhi = 0.5 * ((&cm.j[c].x)[axis] + (&cm.j[hi].x)[axis]);
            net += (jlo - jhi) * area[axis];
        }
        if (!boundary) worst = std::max(worst, std::abs(net));
    }
    return cm.total_current > 0 ? worst / cm.total_current : worst;
}

}  // namespace xdwm
