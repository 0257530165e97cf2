#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace tf {

namespace {

struct Box {
    double zmin = 0.0;
    double zmax = 0.0;
    double h = 0.0;
};

// Potential edges of a profile whose terminals sit at z<0 and z>width.
struct Piecewise {
    std::vector<double> edges;  // ascending interior boundaries
    std::vector<double> values; // values.size() == edges.size() + 1
};

Piecewise flatten(const PotentialProfile& profile) {
    Piecewise p;
    p.values.push_back(profile.left_terminal);
    double z = 0.0;
    p.edges.push_back(z);
    for (const auto& l : profile.layers) {
        z += l.thickness;
        p.edges.push_back(z);
        p.values.push_back(l.potential);
    }
    p.values.push_back(profile.right_terminal);
    return p;
}

// Average of the piecewise-constant potential over [z - h/2, z + h/2];
// keeps eigenvalues smooth as interfaces sweep through cells.
double cell_average(const Piecewise& p, double z, double h) {
    const double lo = z - 0.5 * h;
    const double hi = z + 0.5 * h;
    double acc = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < p.values.size(); ++j) {
        const double next = j < p.edges.size()
                                ? p.edges[j]
                                : std::numeric_limits<double>::infinity();
        const double a = std::max(lo, prev);
        const double b = std::min(hi, next);
        if (b > a)
            acc += p.values[j] * (b - a);
        prev = next;
    }
    return acc / h;
}

// Number of eigenvalues of the tridiagonal operator strictly below x,
// via the standard Sturm/LDL sign-count recurrence. diag holds
// 2/h^2 + V_i; the off-diagonal is the constant -1/h^2.
int sturm_count_below(const std::vector<double>& diag, double off_sq, double x) {
    int count = 0;
    double q = diag[0] - x;
    if (q < 0.0)
        ++count;
    const double tiny = 1e-300;
    for (size_t i = 1; i < diag.size(); ++i) {
        double denom = q;
        if (denom == 0.0)
            denom = tiny;
        q = diag[i] - x - off_sq / denom;
        if (q < 0.0)
            ++count;
    }
    return count;
}

std::vector<double> eigenvalues_below(const Piecewise& p, const Box& box,
                                      double e_max) {
    const int cells = static_cast<int>(std::lround((box.zmax - box.zmin) / box.h));
    const int n = cells - 1;
    if (n < 3)
        throw GeometryError("oracle grid degenerate: too few interior points");

    const double inv_h2 = 1.0 / (box.h * box.h);
    std::vector<double> diag(n);
    double v_min = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = box.zmin + box.h * (i + 1);
        const double v = cell_average(p, z, box.h);
        diag[i] = 2.0 * inv_h2 + v;
        v_min = std::min(v_min, v);
    }
    const double off_sq = inv_h2 * inv_h2;

    const int m = sturm_count_below(diag, off_sq, e_max);
    std::vector<double> evs(m);
    double lo_bound = v_min; // kinetic part of the operator is non-negative
    for (int j = 0; j < m; ++j) {
        double lo = lo_bound, hi = e_max;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(diag, off_sq, mid) >= j + 1)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-14 * (1.0 + std::abs(hi)))
                break;
        }
        evs[j] = 0.5 * (lo + hi);
        lo_bound = lo; // eigenvalues ascend
    }
    return evs;
}

std::vector<double> richardson_levels(const Piecewise& p, const Box& box,
                                      double e_max) {
    // Keep a guard band above e_max so levels that cross beyond the cutoff
    // between resolutions still pair up.
    const double guard = e_max + 0.02 * (std::abs(e_max) + 1.0);
    const std::vector<double> coarse = eigenvalues_below(p, box, guard);
    Box fine = box;
    fine.h = 0.5 * box.h;
    const std::vector<double> refined = eigenvalues_below(p, fine, guard);

    const size_t m = std::min(coarse.size(), refined.size());
    std::vector<double> out;
    out.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        const double v = (4.0 * refined[i] - coarse[i]) / 3.0;
        if (v < e_max)
            out.push_back(v);
    }
    return out;
}

double depth_scale(const Piecewise& p) {
    double v_min = 0.0;
    for (double v : p.values)
        v_min = std::min(v_min, v);
    return std::max(-v_min, 1e-12);
}

Box resolve_box(const PotentialProfile& profile, const Piecewise& p,
                double e_max, const GridSpec& grid) {
    const double depth = depth_scale(p);
    const double k_scale = std::sqrt(depth);
    double h = grid.spacing > 0.0 ? grid.spacing : 0.01 / k_scale;
    double pad;
    if (grid.padding > 0.0) {
        pad = grid.padding;
    } else {
        const double decay = e_max < 0.0 ? std::sqrt(-e_max) : 0.0;
        pad = decay > 0.0 ? 40.0 / decay : 200.0 / k_scale;
        pad = std::min(pad, 200.0 / k_scale);
    }
    // Snap the padding to whole cells so that enlarging the box later keeps
    // every interior node at the same physical position.
    const double width = profile.total_layer_width();
    const int pad_cells = std::max(8, static_cast<int>(std::ceil(pad / h)));
    Box box;
    box.h = h;
    box.zmin = -pad_cells * h;
    box.zmax = width + pad_cells * h;
    return box;
}

} // namespace

SpectrumResult bound_states(const PotentialProfile& profile, double e_max,
                            const GridSpec& grid) {
    profile.validate();
    if (profile.left_terminal != 0.0 || profile.right_terminal != 0.0)
        throw DomainError("bound_states requires vacuum terminals");

    const Piecewise p = flatten(profile);
    const Box box = resolve_box(profile, p, e_max, grid);

    SpectrumResult out;
    out.eigenvalues = richardson_levels(p, box, e_max);
    out.spacing_used = box.h;
    out.padding_used = -box.zmin;
    out.grid_points =
        static_cast<int>(std::lround((box.zmax - box.zmin) / box.h)) - 1;

    if (grid.check_padding) {
        Box wide = box;
        wide.zmin = 2.0 * box.zmin;
        wide.zmax = profile.total_layer_width() +
                    (box.zmax - profile.total_layer_width()) * 2.0;
        const std::vector<double> a = eigenvalues_below(p, box, e_max);
        const std::vector<double> b = eigenvalues_below(p, wide, e_max);
        const double tol = 1e-9 * depth_scale(p);
        const size_t m = std::min(a.size(), b.size());
        for (size_t i = 0; i < m; ++i)
            if (std::abs(a[i] - b[i]) > tol)
                throw GeometryError("bound_states: padding self-check failed; "
                                    "levels move when the box is enlarged");
    }
    return out;
}

double grand_potential_per_area(const PotentialProfile& profile, double mu,
                                const GridSpec& grid) {
    const SpectrumResult s = bound_states(profile, mu, grid);
    double acc = 0.0;
    for (double e : s.eigenvalues) {
        const double x = mu - e;
        acc += x * x;
    }
    return -acc / (4.0 * M_PI);
}

namespace {

struct GeometryInfo {
    MaterialParams mat;     // sets mu and the default length scales
    double body1 = 0.0;     // left body width (0 = differentiating the width itself)
    double body2 = 0.0;
    double bottom1 = 0.0;
    double bottom2 = 0.0;
    double gap = 0.0;
    bool bulk = false;
};

GeometryInfo describe(const Geometry& geometry, const GridSpec& grid) {
    GeometryInfo info;
    if (const auto* si = std::get_if<SemiInfinitePair>(&geometry)) {
        info.mat = si->mat1;
        const double proxy = grid.proxy_slab_width > 0.0
                                 ? grid.proxy_slab_width
                                 : 30.0 / si->mat1.k_fermi;
        info.body1 = info.body2 = proxy;
        info.bottom1 = si->mat1.band_bottom();
        info.bottom2 = si->mat2.band_bottom();
        info.gap = si->gap;
    } else if (const auto* fp = std::get_if<FilmPair>(&geometry)) {
        info.mat = fp->mat;
        info.body1 = fp->d1;
        info.body2 = fp->d2;
        info.bottom1 = info.bottom2 = fp->mat.band_bottom();
        info.gap = fp->gap;
    } else {
        const auto& bulk = std::get<Bulk>(geometry);
        info.mat = bulk.mat;
        info.bulk = true;
        info.body1 = grid.proxy_slab_width > 0.0 ? grid.proxy_slab_width
                                                 : 30.0 / bulk.mat.k_fermi;
        info.bottom1 = bulk.mat.band_bottom();
    }
    return info;
}

PotentialProfile assemble(const GeometryInfo& info, double gap_or_width) {
    PotentialProfile profile;
    if (info.bulk) {
        profile.layers.push_back({gap_or_width, info.bottom1});
        return profile;
    }
    profile.layers.push_back({info.body1, info.bottom1});
    if (gap_or_width > 0.0)
        profile.layers.push_back({gap_or_width, 0.0});
    profile.layers.push_back({info.body2, info.bottom2});
    return profile;
}

} // namespace

OracleForce oracle_force(const Geometry& geometry, double delta_l,
                         const GridSpec& grid) {
    const GeometryInfo info = describe(geometry, grid);
    const double mu = info.mat.chemical_potential();
    const double x0 = info.bulk ? info.body1 : info.gap;
    const double dl =
        delta_l > 0.0 ? delta_l : 1e-3 / info.mat.k_fermi;
    if (x0 - dl <= 0.0 && !info.bulk)
        throw DomainError("oracle_force: gap too small for the difference step");

    // Padding self-check once; the differenced evaluations reuse the verdict.
    GridSpec inner = grid;
    if (grid.check_padding) {
        bound_states(assemble(info, x0), mu, grid);
        inner.check_padding = false;
    }

    auto omega = [&](double x) {
        return grand_potential_per_area(assemble(info, x), mu, inner);
    };
    auto central = [&](double step) {
        return -(omega(x0 + step) - omega(x0 - step)) / (2.0 * step);
    };

    const double f_full = central(dl);
    const double f_half = central(0.5 * dl);
    OracleForce out;
    out.value = f_half;
    out.error_estimate = std::abs(f_half - f_full) / 3.0;
    return out;
}

} // namespace tf
