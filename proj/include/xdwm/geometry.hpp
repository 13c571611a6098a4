// geometry.hpp — finite-difference mesh and builders for the device
// geometries: plain/notched wires, single cross overlays, and bundles of
// X nanowires crossed by Y nanowires.
//
// Conventions:
//   x — along X-NWs (current axis for X shifts), i index
//   y — along Y-NWs, j index, increasing upward; X wire row 0 is the TOP row
//   z — out of plane, k index
// Domain walls sit at patterned notches: symmetric rectangular bites on both
// wire edges at every domain boundary. Where a domain boundary coincides with
// the edge of a cross (an X-Cell corner) no bite is cut; the corner itself is
// the pinning site.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xdwm/core.hpp"

namespace xdwm {

enum class GeometryKind { plain_wire, notched_wire, cross_overlay, bundle };
enum class Axis { X, Y };
enum class RegionKind { domain, xcell, notch };

struct NotchSpec {
    double depth = 4e-9;  // bite depth into the wire width, per edge
    double width = 8e-9;  // bite extent along the wire axis
};

/// One Y-NW overlay in a bundle: the wire crosses every X row at `column`.
struct YPlacement {
    int column = 0;           // X-domain column index, 0-based from the left
    int extra_above = 0;      // Y domains above the top X row
    int extra_below = 0;      // Y domains below the bottom X row
};

struct GeometrySpec {
    GeometryKind kind = GeometryKind::plain_wire;

    // X nanowires
    int n_xnw = 1;
    int domains = 8;             // domains per X-NW
    double pitch = 80e-9;        // X domain pitch (m)
    double wire_width = 40e-9;   // X-NW width = X-Cell width (m)
    double thickness = 1e-9;     // film thickness (m)
    NotchSpec notch;             // depth 0 disables notches

    // Y nanowires / crosses
    double xcell_length = 80e-9;  // X-Cell length along x = Y-NW width (m)
    double y_pitch = 40e-9;       // Y domain pitch along y (m)
    double gap = 80e-9;           // edge-to-edge gap between X rows (m)
    std::vector<YPlacement> y_wires;

    void validate() const {
        if (n_xnw < 1) throw Error(ErrorCode::PlacementOutOfRange, "n_xnw must be >= 1");
        if (domains < 1) throw Error(ErrorCode::PlacementOutOfRange, "domains must be >= 1");
        if (!(pitch > 0 && wire_width > 0 && thickness > 0))
            throw std::invalid_argument("GeometrySpec: wire dimensions must be > 0");
        if (!y_wires.empty() && !(xcell_length > 0 && y_pitch > 0))
            throw std::invalid_argument("GeometrySpec: cross dimensions must be > 0");
        if (notch.depth > 0 && !(notch.depth < wire_width / 2))
            throw std::invalid_argument("GeometrySpec: notch depth must be < wire width / 2");
        for (const auto& y : y_wires)
            if (y.column < 0 || y.column >= domains)
                throw Error(ErrorCode::PlacementOutOfRange, "Y wire column out of range");
    }
};

struct Region {
    std::string name;
    RegionKind kind = RegionKind::domain;
    std::vector<int> cells;        // compact cell ids (domain/xcell regions)
    std::vector<int> grid_cells;   // grid ids of removed material (notch regions)
};

struct Wire {
    Axis axis = Axis::X;
    int index = 0;                      // row index (X, 0 = top) or Y wire index
    int lo[3] = {0, 0, 0};              // wire rectangle in cells, [lo, hi)
    int hi[3] = {0, 0, 0};
    std::vector<int> domain_regions;    // region ids in logical order
                                        // (X: left->right, Y: top->bottom)
    std::vector<int> terminal_a;        // compact cells: X left / Y top face
    std::vector<int> terminal_b;        // compact cells: X right / Y bottom face
};

class Mesh {
public:
    int nx = 0, ny = 0, nz = 0;
    double dx = 2e-9, dy = 2e-9, dz = 1e-9;
    GeometrySpec spec;

    std::vector<std::uint8_t> occ;   // grid occupancy
    std::vector<int> grid_to_cell;   // -1 where unoccupied
    std::vector<int> cell_to_grid;
    // neighbor order: -x,+x,-y,+y,-z,+z; -1 where missing (mask edge)
    std::vector<std::array<int, 6>> neighbors;

    std::vector<Region> regions;
    std::vector<Wire> wires;  // all X wires first (row order), then Y wires

    int cell_count() const { return static_cast<int>(cell_to_grid.size()); }
    int grid_index(int i, int j, int k) const { return i + nx * (j + ny * k); }
    bool occupied(int i, int j, int k) const { return occ[grid_index(i, j, k)] != 0; }
    int cell_at(int i, int j, int k) const { return grid_to_cell[grid_index(i, j, k)]; }

    std::array<int, 3> cell_ijk(int cell) const {
        const int g = cell_to_grid[cell];
        return {g % nx, (g / nx) % ny, g / (nx * ny)};
    }
    Vec3 cell_center(int cell) const {
        const auto ijk = cell_ijk(cell);
        return {(ijk[0] + 0.5) * dx, (ijk[1] + 0.5) * dy, (ijk[2] + 0.5) * dz};
    }
    double cell_volume() const { return dx * dy * dz; }

    const Region* find_region(const std::string& name) const {
        for (const auto& r : regions)
            if (r.name == name) return &r;
        return nullptr;
    }

    int n_x_wires() const {
        int n = 0;
        for (const auto& w : wires) n += (w.axis == Axis::X);
        return n;
    }
    const Wire& x_wire(int row) const { return wires.at(row); }
    const Wire& y_wire(int q) const { return wires.at(n_x_wires() + q); }
    int n_y_wires() const { return static_cast<int>(wires.size()) - n_x_wires(); }

    /// All occupied cells inside a wire's rectangle (includes shared X-Cells).
    std::vector<int> wire_cells(const Wire& w) const {
        std::vector<int> out;
        for (int k = w.lo[2]; k < w.hi[2]; ++k)
            for (int j = w.lo[1]; j < w.hi[1]; ++j)
                for (int i = w.lo[0]; i < w.hi[0]; ++i) {
                    const int c = grid_to_cell[grid_index(i, j, k)];
                    if (c >= 0) out.push_back(c);
                }
        return out;
    }
};

namespace detail {

inline int to_cells(double length, double d, const char* what) {
    const double q = length / d;
    const int n = static_cast<int>(std::llround(q));
    if (n <= 0 || std::abs(q - n) > 1e-6)
        throw Error(ErrorCode::NonIntegralDimension,
                    std::string(what) + " is not an integral multiple of the cell size");
    return n;
}

}  // namespace detail

/// Builds the mesh for any GeometrySpec. The occupancy mask is the union of
/// the wire rectangles minus the notch bites; domain, X-Cell and notch
/// regions are recorded. Throws NonIntegralDimension / OverlapConflict /
/// PlacementOutOfRange on invalid specs.
inline Mesh build_mesh(const GeometrySpec& spec, double dx = 2e-9, double dy = 2e-9, double dz = 1e-9) {
    spec.validate();
    using detail::to_cells;

    Mesh m;
    m.spec = spec;
    m.dx = dx;
    m.dy = dy;
    m.dz = dz;

    const int Pc = to_cells(spec.pitch, dx, "domain pitch");
    const int Wc = to_cells(spec.wire_width, dy, "wire width");
    const int Tc = to_cells(spec.thickness, dz, "thickness");
    const bool has_y = !spec.y_wires.empty();
    const int Lc = has_y ? to_cells(spec.xcell_length, dx, "xcell length") : 0;
    const int Pyc = has_y ? to_cells(spec.y_pitch, dy, "y pitch") : 1;
    const int Gc = spec.n_xnw > 1 ? to_cells(spec.gap, dy, "gap") : 0;

    if (has_y && spec.n_xnw > 1 && Gc % Pyc != 0)
        throw Error(ErrorCode::NonIntegralDimension, "gap must be a multiple of y pitch");
    if (has_y && Wc % Pyc != 0)
        throw Error(ErrorCode::NonIntegralDimension, "wire width must be a multiple of y pitch");
    if (has_y && Lc > Pc)
        throw Error(ErrorCode::PlacementOutOfRange, "xcell length exceeds domain pitch");

    int extra_above = 0, extra_below = 0;
    for (const auto& y : spec.y_wires) {
        extra_above = std::max(extra_above, y.extra_above);
        extra_below = std::max(extra_below, y.extra_below);
    }

    m.nx = Pc * spec.domains;
    const int band_stack = spec.n_xnw * Wc + (spec.n_xnw - 1) * Gc;
    m.ny = band_stack + (extra_above + extra_below) * Pyc;
    m.nz = Tc;
    m.occ.assign(static_cast<size_t>(m.nx) * m.ny * m.nz, 0);

    // X band of row r (0 = top): j in [band_lo(r), band_lo(r)+Wc)
    auto band_lo = [&](int r) { return extra_below * Pyc + (spec.n_xnw - 1 - r) * (Wc + Gc); };

    auto fill_rect = [&](int i0, int i1, int j0, int j1, std::uint8_t v) {
        for (int k = 0; k < m.nz; ++k)
            for (int j = j0; j < j1; ++j)
                for (int i = i0; i < i1; ++i) m.occ[m.grid_index(i, j, k)] = v;
    };

    for (int r = 0; r < spec.n_xnw; ++r) fill_rect(0, m.nx, band_lo(r), band_lo(r) + Wc, 1);

    // Y strips. Strip q: i in [strip_lo(q), strip_lo(q)+Lc), centered on its column.
    std::vector<std::array<int, 2>> strip_x;  // [lo, hi) per Y wire
    std::vector<std::array<int, 2>> strip_y;
    for (size_t q = 0; q < spec.y_wires.size(); ++q) {
        const auto& yw = spec.y_wires[q];
        if ((Pc - Lc) % 2 != 0)
            throw Error(ErrorCode::NonIntegralDimension,
                        "xcell length must center on the column (pitch - length even in cells)");
        const int i0 = yw.column * Pc + (Pc - Lc) / 2;
        const int j0 = band_lo(spec.n_xnw - 1) - yw.extra_below * Pyc;
        const int j1 = band_lo(0) + Wc + yw.extra_above * Pyc;
        if (j0 < 0 || j1 > m.ny) throw Error(ErrorCode::PlacementOutOfRange, "Y extent out of mesh");
        for (size_t p = 0; p < q; ++p)
            if (!(i0 >= strip_x[p][1] || i0 + Lc <= strip_x[p][0]))
                throw Error(ErrorCode::OverlapConflict, "two Y wires share cells");
        strip_x.push_back({i0, i0 + Lc});
        strip_y.push_back({j0, j1});
        fill_rect(i0, i0 + Lc, j0, j1, 1);
    }

    // Notch bites. X wires: at interior domain boundaries, skipped where the
    // bite would intersect a Y strip (cross corners pin there instead).
    const int Dc = spec.notch.depth > 0 ? to_cells(spec.notch.depth, dy, "notch depth") : 0;
    const int Wn = spec.notch.depth > 0 ? to_cells(spec.notch.width, dx, "notch width") : 0;
    if (Dc > 0 && Wn % 2 != 0)
        throw Error(ErrorCode::NonIntegralDimension, "notch width must span an even cell count");

    struct Bite {
        std::string name;
        int i0, i1, j0, j1;
    };
    std::vector<Bite> bites;

    if (Dc > 0 && spec.kind != GeometryKind::plain_wire) {
        for (int r = 0; r < spec.n_xnw; ++r) {
            const int jl = band_lo(r);
            for (int b = 1; b < spec.domains; ++b) {
                const int ib = b * Pc;
                bool blocked = false;
                for (size_t q = 0; q < strip_x.size(); ++q) {
                    const bool crosses_row = strip_y[q][0] <= jl && jl + Wc <= strip_y[q][1];
                    if (crosses_row && ib - Wn / 2 < strip_x[q][1] && strip_x[q][0] < ib + Wn / 2)
                        blocked = true;
                }
                if (blocked) continue;
                const std::string base = "notch.x" + std::to_string(r) + ".b" + std::to_string(b);
                bites.push_back({base + ".bot", ib - Wn / 2, ib + Wn / 2, jl, jl + Dc});
                bites.push_back({base + ".top", ib - Wn / 2, ib + Wn / 2, jl + Wc - Dc, jl + Wc});
            }
        }
        // Y wires: slot boundaries lying strictly outside the X bands (bands
        // abut slot boundaries at the cross corners; corners pin).
        const int Dcy = to_cells(spec.notch.depth, dx, "notch depth (y wire)");
        const int Wny = to_cells(spec.notch.width, dy, "notch width (y wire)");
        if (Wny % 2 != 0)
            throw Error(ErrorCode::NonIntegralDimension, "notch width must span an even cell count");
        for (size_t q = 0; q < strip_x.size(); ++q) {
            for (int jb = strip_y[q][0] + Pyc; jb < strip_y[q][1]; jb += Pyc) {
                bool at_band_edge = false, inside_band = false;
                for (int r = 0; r < spec.n_xnw; ++r) {
                    const int jl = band_lo(r);
                    if (jb == jl || jb == jl + Wc) at_band_edge = true;
                    if (jb > jl && jb < jl + Wc) inside_band = true;
                }
                if (at_band_edge || inside_band) continue;
                const std::string base =
                    "notch.y" + std::to_string(q) + ".j" + std::to_string(jb);
                bites.push_back({base + ".left", strip_x[q][0], strip_x[q][0] + Dcy,
                                 jb - Wny / 2, jb + Wny / 2});
                bites.push_back({base + ".right", strip_x[q][1] - Dcy, strip_x[q][1],
                                 jb - Wny / 2, jb + Wny / 2});
            }
        }
    }

    for (const auto& b : bites) fill_rect(b.i0, b.i1, b.j0, b.j1, 0);

    // Compact cell indexing + neighbor table.
    m.grid_to_cell.assign(m.occ.size(), -1);
    for (size_t g = 0; g < m.occ.size(); ++g)
        if (m.occ[g]) {
            m.grid_to_cell[g] = static_cast<int>(m.cell_to_grid.size());
            m.cell_to_grid.push_back(static_cast<int>(g));
        }
    if (m.cell_to_grid.empty()) throw std::invalid_argument("build_mesh: empty occupancy mask");

    m.neighbors.resize(m.cell_to_grid.size());
    for (int c = 0; c < m.cell_count(); ++c) {
        const auto ijk = m.cell_ijk(c);
        const int i = ijk[0], j = ijk[1], k = ijk[2];
        auto nb = [&](int ii, int jj, int kk) -> int {
            if (ii < 0 || ii >= m.nx || jj < 0 || jj >= m.ny || kk < 0 || kk >= m.nz) return -1;
            return m.grid_to_cell[m.grid_index(ii, jj, kk)];
        };
        m.neighbors[c] = {nb(i - 1, j, k), nb(i + 1, j, k), nb(i, j - 1, k),
                          nb(i, j + 1, k), nb(i, j, k - 1), nb(i, j, k + 1)};
    }

    // Regions. X-Cells first so wires can reference them.
    auto cells_in = [&](int i0, int i1, int j0, int j1) {
        std::vector<int> out;
        for (int k = 0; k < m.nz; ++k)
            for (int j = j0; j < j1; ++j)
                for (int i = i0; i < i1; ++i) {
                    const int c = m.grid_to_cell[m.grid_index(i, j, k)];
                    if (c >= 0) out.push_back(c);
                }
        return out;
    };

    // xcell_region[r][q] = region id, or -1
    std::vector<std::vector<int>> xcell_region(spec.n_xnw, std::vector<int>(strip_x.size(), -1));
    for (int r = 0; r < spec.n_xnw; ++r) {
        const int jl = band_lo(r);
        for (size_t q = 0; q < strip_x.size(); ++q) {
            const bool crosses_row = strip_y[q][0] <= jl && jl + Wc <= strip_y[q][1];
            if (!crosses_row) continue;
            Region reg;
            reg.name = "xcell.r" + std::to_string(r) + ".y" + std::to_string(q);
            reg.kind = RegionKind::xcell;
            reg.cells = cells_in(strip_x[q][0], strip_x[q][1], jl, jl + Wc);
            xcell_region[r][q] = static_cast<int>(m.regions.size());
            m.regions.push_back(std::move(reg));
        }
    }

    // X wires and their domains.
    for (int r = 0; r < spec.n_xnw; ++r) {
        const int jl = band_lo(r);
        Wire w;
        w.axis = Axis::X;
        w.index = r;
        w.lo[0] = 0; w.hi[0] = m.nx;
        w.lo[1] = jl; w.hi[1] = jl + Wc;
        w.lo[2] = 0; w.hi[2] = m.nz;
        for (int d = 0; d < spec.domains; ++d) {
            int covering = -1;
            for (size_t q = 0; q < strip_x.size(); ++q)
                if (xcell_region[r][q] >= 0 && strip_x[q][0] == d * Pc && strip_x[q][1] == (d + 1) * Pc)
                    covering = xcell_region[r][q];
            if (covering >= 0) {
                w.domain_regions.push_back(covering);
                continue;
            }
            Region reg;
            reg.name = "x" + std::to_string(r) + ".d" + std::to_string(d);
            reg.kind = RegionKind::domain;
            // Column cells minus any partial strip overlap (partial crosses own those).
            for (int c : cells_in(d * Pc, (d + 1) * Pc, jl, jl + Wc)) {
                const auto ijk = m.cell_ijk(c);
                bool in_strip = false;
                for (size_t q = 0; q < strip_x.size(); ++q)
                    if (xcell_region[r][q] >= 0 && ijk[0] >= strip_x[q][0] && ijk[0] < strip_x[q][1])
                        in_strip = true;
                if (!in_strip) reg.cells.push_back(c);
            }
            w.domain_regions.push_back(static_cast<int>(m.regions.size()));
            m.regions.push_back(std::move(reg));
        }
        w.terminal_a = cells_in(0, 1, jl, jl + Wc);
        w.terminal_b = cells_in(m.nx - 1, m.nx, jl, jl + Wc);
        m.wires.push_back(std::move(w));
    }

    // Y wires and their slots, top -> bottom.
    for (size_t q = 0; q < strip_x.size(); ++q) {
        Wire w;
        w.axis = Axis::Y;
        w.index = static_cast<int>(q);
        w.lo[0] = strip_x[q][0]; w.hi[0] = strip_x[q][1];
        w.lo[1] = strip_y[q][0]; w.hi[1] = strip_y[q][1];
        w.lo[2] = 0; w.hi[2] = m.nz;
        int slot = 0;
        for (int jt = strip_y[q][1]; jt > strip_y[q][0]; jt -= Pyc, ++slot) {
            const int j0 = jt - Pyc;
            int covering = -1;
            for (int r = 0; r < spec.n_xnw; ++r)
                if (xcell_region[r][q] >= 0 && band_lo(r) <= j0 && jt <= band_lo(r) + Wc)
                    covering = xcell_region[r][q];
            if (covering >= 0) {
                // Slot inside an X band: cells belong to the xcell region. A
                // band spanning several slots contributes that region once per
                // slot so slot indices still advance one y-pitch at a time.
                w.domain_regions.push_back(covering);
                continue;
            }
            Region reg;
            reg.name = "y" + std::to_string(q) + ".s" + std::to_string(slot);
            reg.kind = RegionKind::domain;
            reg.cells = cells_in(strip_x[q][0], strip_x[q][1], j0, jt);
            w.domain_regions.push_back(static_cast<int>(m.regions.size()));
            m.regions.push_back(std::move(reg));
        }
        w.terminal_a = cells_in(strip_x[q][0], strip_x[q][1], strip_y[q][1] - 1, strip_y[q][1]);
        w.terminal_b = cells_in(strip_x[q][0], strip_x[q][1], strip_y[q][0], strip_y[q][0] + 1);
        m.wires.push_back(std::move(w));
    }

    // Notch regions: removed material, recorded as grid indices.
    for (const auto& b : bites) {
        Region reg;
        reg.name = b.name;
        reg.kind = RegionKind::notch;
        for (int k = 0; k < m.nz; ++k)
            for (int j = b.j0; j < b.j1; ++j)
                for (int i = b.i0; i < b.i1; ++i) reg.grid_cells.push_back(m.grid_index(i, j, k));
        m.regions.push_back(std::move(reg));
    }

    return m;
}

/// Bundle convenience builder (n_xnw parallel X rows, Y wires per placements).
inline Mesh bundle(GeometrySpec spec, int n_xnw, int n_ynw,
                   const std::vector<YPlacement>& placements,
                   double dx = 2e-9, double dy = 2e-9, double dz = 1e-9) {
    if (n_ynw != static_cast<int>(placements.size()))
        throw Error(ErrorCode::PlacementOutOfRange, "placements must list each Y wire");
    spec.kind = GeometryKind::bundle;
    spec.n_xnw = n_xnw;
    spec.y_wires = placements;
    return build_mesh(spec, dx, dy, dz);
}

}  // namespace xdwm
