#include "core/models.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tf {

PressureResult fermi_pressure(const MaterialParams& mat, const QuadratureSpec& spec) {
    PressureResult out;
    out.closed_form = 0.4 * mat.density * mat.fermi_energy;

    // Bulk flux: no reflection on the interior side; the surface side drops
    // out of the kernel entirely once r1 r2 = 0.
    const FluxResult numeric = momentum_flux_3d_zero_t(
        ReflectionAmplitude::constant(Complex(0.0)), ReflectionAmplitude::step(mat),
        1.0 / mat.k_fermi, mat.fermi_energy, spec);
    out.numeric = numeric.value;
    out.numeric_error = numeric.error_estimate;
    out.rel_diff = std::abs(out.numeric - out.closed_form) / out.closed_form;
    if (out.rel_diff > 1e-8)
        throw ConvergenceError("fermi_pressure: closed form and flux integral disagree",
                               out.numeric, out.rel_diff);
    return out;
}

double contact_force(const MaterialParams& mat) {
    const double kf3 = mat.k_fermi * mat.k_fermi * mat.k_fermi;
    return -kf3 / (M_PI * M_PI) *
           (mat.fermi_energy / 5.0 + mat.work_function / 3.0);
}

ForcePoint force_semiinfinite(const MaterialParams& mat1, const MaterialParams& mat2,
                              double gap, const QuadratureSpec& spec) {
    if (!(gap >= 0.0))
        throw DomainError("force_semiinfinite requires gap >= 0");
    const FluxResult f = evanescent_force(mat1, mat2, gap, spec);
    return {gap, f.value, f.error_estimate, f.eta_used, f.resonances_detected};
}

ForcePoint force_thin_films(const MaterialParams& mat, double d1, double d2,
                            double gap, const QuadratureSpec& spec) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw DomainError("force_thin_films requires positive film widths");
    if (!(gap >= 0.0))
        throw DomainError("force_thin_films requires gap >= 0");

    const FluxResult f = evanescent_flux(
        ReflectionAmplitude::slab(mat, d1), ReflectionAmplitude::slab(mat, d2),
        gap, mat.kappa_fermi, mat.kappa_zero, mat.work_function, {},
        mat.fermi_energy, spec);
    return {gap, f.value, f.error_estimate, f.eta_used, f.resonances_detected};
}

double critical_film_width(const MaterialParams& mat) {
    return 2.0 / mat.k_fermi * std::atan(mat.kappa_fermi / mat.k_fermi);
}

SurfaceEnergy surface_energy(const MaterialParams& mat, const QuadratureSpec& spec) {
    spec.validate();
    auto force_at = [&](double gap) {
        return evanescent_force(mat, mat, gap, spec).value;
    };

    // Truncate where the exponential (or, at W = 0, power-law) tail is
    // negligible; double l_max until the tail estimate clears abs_tol.
    const double kappa_f = mat.kappa_fermi;
    double l_max = kappa_f > 0.0 ? 8.0 / kappa_f : 50.0 / mat.k_fermi;
    double tail = 0.0;
    for (int it = 0; it < 12; ++it) {
        const double f_tail = std::abs(force_at(l_max));
        tail = kappa_f > 0.0 ? f_tail / (2.0 * kappa_f) : f_tail * l_max;
        if (tail < 0.5 * spec.abs_tol || l_max > 1e4 / mat.k_fermi)
            break;
        l_max *= 2.0;
    }

    const QuadResult q = integrate_adaptive(force_at, 0.0, l_max, spec);
    SurfaceEnergy out;
    out.work_of_separation = -q.value;
    out.per_surface = 0.5 * out.work_of_separation;
    out.error_estimate = q.error + tail;
    out.l_max = l_max;
    return out;
}

WExtremum force_extremum_in_w(double gap, double fermi_energy,
                              const QuadratureSpec& spec) {
    if (!(gap >= 0.0) || !(fermi_energy > 0.0))
        throw DomainError("force_extremum_in_w requires gap >= 0 and fermi_energy > 0");

    auto magnitude = [&](double w) {
        const MaterialParams m = make_material(fermi_energy, w);
        return std::abs(evanescent_force(m, m, gap, spec).value);
    };

    // Coarse scan over (0, 20 E_F], then golden-section inside the bracket.
    const int n = 81;
    const double w_hi = 20.0 * fermi_energy;
    const double w_lo = w_hi / 1e4;
    std::vector<double> ws(n), fs(n);
    for (int i = 0; i < n; ++i) {
        ws[i] = w_lo * std::pow(w_hi / w_lo, double(i) / (n - 1));
        fs[i] = magnitude(ws[i]);
    }
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (fs[i] > fs[best])
            best = i;
    if (best == 0 || best == n - 1)
        throw DomainError("force_extremum_in_w: no interior maximum in (0, 20 E_F]");

    double a = ws[best - 1], b = ws[best + 1];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = magnitude(x1), f2 = magnitude(x2);
    while (b - a > 1e-7 * fermi_energy) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = magnitude(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = magnitude(x1);
        }
    }
    WExtremum out;
    out.w_star = 0.5 * (a + b);
    const MaterialParams m = make_material(fermi_energy, out.w_star);
    out.force_star = evanescent_force(m, m, gap, spec).value;
    return out;
}

} // namespace tf
