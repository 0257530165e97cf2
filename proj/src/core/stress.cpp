#include "core/stress.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace tf {

namespace {

Complex round_trip_factor(Complex r1, Complex r2, Complex k, double L) {
    const Complex ik(-k.imag(), k.real());
    return r1 * r2 * std::exp(2.0 * ik * L);
}

bool interesting(Complex u) {
    return std::abs(u - 1.0) < 0.5 || std::abs(u) > 2.0;
}

bool re_crossing(Complex u0, Complex u1) {
    return (u0.real() - 1.0) * (u1.real() - 1.0) < 0.0;
}

// Bisect a sign change of Re(u) - 1 down to machine resolution.
double bisect_crossing(const std::function<Complex(double)>& u, double x0,
                       double x1, double f0) {
    for (int it = 0; it < 120 && x1 - x0 > 4e-16 * (std::abs(x0) + std::abs(x1));
         ++it) {
        const double xm = 0.5 * (x0 + x1);
        const double fm = u(xm).real() - 1.0;
        if (f0 * fm <= 0.0)
            x1 = xm;
        else {
            x0 = xm;
            f0 = fm;
        }
    }
    return 0.5 * (x0 + x1);
}

// Lorentzian half-width of a registered pole: |Im u| / |d Re u / dx|, with
// the derivative stepped at the scale of the width itself.
double pole_width(const std::function<Complex(double)>& u, double x,
                  double span) {
    double h = 1e-8 * span;
    double width = span;
    for (int pass = 0; pass < 3; ++pass) {
        const Complex up = u(x + h);
        const Complex um = u(x - h);
        const double slope = std::abs(up.real() - um.real()) / (2.0 * h);
        const double im = std::abs(u(x).imag());
        if (slope <= 0.0 || !std::isfinite(slope))
            break;
        width = std::max(im / slope, 1e-16 * span);
        h = std::max(0.25 * width, 4e-16 * (std::abs(x) + span));
        if (!std::isfinite(width))
            return 1e-12 * span;
    }
    return std::min(width, span);
}

struct ScanInterval {
    double x0, x1;
    Complex u0, u1;
    int depth;
};

} // namespace

PoleScan scan_kernel_poles(const std::function<Complex(double)>& u, double a,
                           double b, int coarse_points) {
    PoleScan out;
    if (!(b > a))
        return out;
    const double span = b - a;
    const int n = std::max(coarse_points, 11);

    std::vector<ScanInterval> work;
    {
        std::vector<Complex> us(n);
        for (int i = 0; i < n; ++i)
            us[i] = u(a + span * i / (n - 1));
        for (int i = 0; i + 1 < n; ++i)
            work.push_back({a + span * i / (n - 1), a + span * (i + 1) / (n - 1),
                            us[i], us[i + 1], 0});
    }

    std::vector<double> roots;
    std::vector<std::pair<double, double>> pole_of_u; // brackets around |u| blowups

    while (!work.empty()) {
        ScanInterval iv = work.back();
        work.pop_back();

        if (re_crossing(iv.u0, iv.u1) &&
            std::min(std::abs(iv.u0 - 1.0), std::abs(iv.u1 - 1.0)) < 0.9) {
            const double x = bisect_crossing(u, iv.x0, iv.x1, iv.u0.real() - 1.0);
            if (std::abs(u(x) - 1.0) < 0.5)
                roots.push_back(x);
            else
                pole_of_u.emplace_back(iv.x0, iv.x1);
            continue;
        }
        const double big = std::max(std::abs(iv.u0), std::abs(iv.u1));
        if (big > 50.0) {
            pole_of_u.emplace_back(iv.x0, iv.x1);
            continue;
        }
        if (iv.depth < 3 && (interesting(iv.u0) || interesting(iv.u1))) {
            const int parts = 8;
            Complex prev = iv.u0;
            for (int j = 0; j < parts; ++j) {
                const double y0 = iv.x0 + (iv.x1 - iv.x0) * j / parts;
                const double y1 = iv.x0 + (iv.x1 - iv.x0) * (j + 1) / parts;
                const Complex next = (j + 1 == parts) ? iv.u1 : u(y1);
                work.push_back({y0, y1, prev, next, iv.depth + 1});
                prev = next;
            }
        }
    }

    // Pole pairs of the kernel can straddle a pole of u itself (an isolated
    // bound level of one reflector) at exponentially small distance. Locate
    // the blowup, then walk geometric shells outward looking for crossings.
    for (auto [x0, x1] : pole_of_u) {
        double lo = x0, hi = x1;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * span; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (std::abs(u(m1)) < std::abs(u(m2)))
                lo = m1;
            else
                hi = m2;
        }
        const double center = 0.5 * (lo + hi);
        for (int side = -1; side <= 1; side += 2) {
            double r_prev = 0.0;
            Complex u_prev;
            bool have_prev = false;
            for (double r = 2e-16 * span; r < 2.0 * (x1 - x0); r *= 2.0) {
                const double x = center + side * r;
                if (x <= a || x >= b)
                    break;
                const Complex ux = u(x);
                if (have_prev && re_crossing(u_prev, ux) &&
                    std::min(std::abs(u_prev - 1.0), std::abs(ux - 1.0)) < 0.9) {
                    const double xa = std::min(center + side * r_prev, x);
                    const double xb = std::max(center + side * r_prev, x);
                    const double root =
                        bisect_crossing(u, xa, xb, u(xa).real() - 1.0);
                    if (std::abs(u(root) - 1.0) < 0.5)
                        roots.push_back(root);
                }
                u_prev = ux;
                r_prev = r;
                have_prev = true;
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double p, double q) {
                                return std::abs(p - q) < 1e-14 * span;
                            }),
                roots.end());

    for (double x : roots) {
        out.location.push_back(x);
        out.width.push_back(pole_width(u, x, span));
    }
    return out;
}

Complex round_trip_kernel(Complex r1, Complex r2, Complex k, double L,
                          bool* near_resonance) {
    if (L < 0.0)
        throw DomainError("round_trip_kernel requires L >= 0");
    const Complex u = round_trip_factor(r1, r2, k, L);
    if (near_resonance)
        *near_resonance = std::abs(u) >= 1.0 - 1e-12;
    if (u == Complex(1.0))
        throw ResonanceError("round-trip kernel pole", k.real());
    return (1.0 + u) / (1.0 - u);
}

namespace {

struct SinglePass {
    double value;
    double error;
    int poles;
};

// Shared driver: integrate `weighted` (a real integrand on [a, b]) whose
// kernel factor is u/(1-u) or (1+u)/(1-u) with u given by `u_of_x`, meshing
// detected kernel poles and the supplied fixed breakpoints.
SinglePass integrate_kernel_axis(const std::function<double(double)>& weighted,
                                 const std::function<Complex(double)>& u_of_x,
                                 double a, double b,
                                 std::span<const double> fixed_breaks,
                                 const QuadratureSpec& spec) {
    const double span = b - a;
    const PoleScan poles = scan_kernel_poles(u_of_x, a, b);

    std::vector<double> bp(fixed_breaks.begin(), fixed_breaks.end());
    // graded shells toward both endpoints: integrable growth lives there
    append_graded_breakpoints(bp, a, b, a, 1e-9 * span, 0.05 * span);
    append_graded_breakpoints(bp, a, b, b, 1e-9 * span, 0.05 * span);
    for (double e : fixed_breaks)
        append_graded_breakpoints(bp, a, b, e, 1e-12 * span, 0.02 * span);
    for (size_t i = 0; i < poles.location.size(); ++i) {
        const double w = std::max(poles.width[i], 1e-15 * span);
        append_graded_breakpoints(bp, a, b, poles.location[i], 0.5 * w,
                                  std::min(0.05 * span, 1e6 * w));
    }

    const QuadResult q = integrate_adaptive(weighted, a, b, spec, bp);
    return {q.value, q.error, static_cast<int>(poles.location.size())};
}

FluxResult with_eta_extrapolation(
    const std::function<SinglePass(double)>& run, double eta,
    const QuadratureSpec& spec) {
    const SinglePass first = run(eta);
    FluxResult out;
    out.eta_used = eta;
    out.resonances_detected = first.poles;
    if (!spec.eta_extrapolate) {
        out.value = first.value;
        out.error_estimate = first.error;
        return out;
    }
    const SinglePass half = run(0.5 * eta);
    out.value = 2.0 * half.value - first.value;
    out.error_estimate = 2.0 * half.error + first.error;
    out.resonances_detected = std::max(first.poles, half.poles);
    return out;
}

} // namespace

FluxResult momentum_flux_1d(const ReflectionAmplitude& r1,
                            const ReflectionAmplitude& r2, double gap,
                            double fermi_energy, const QuadratureSpec& spec) {
    spec.validate();
    if (!(gap > 0.0))
        throw DomainError("momentum_flux_1d requires gap > 0");
    if (!(fermi_energy > 0.0))
        throw DomainError("momentum_flux_1d requires fermi_energy > 0");
    const double k_f = std::sqrt(fermi_energy);

    auto run = [&](double eta) {
        auto u_of_k = [&](double k) {
            const Complex energy(k * k, eta);
            const Complex kc = longitudinal_wavenumber(energy, 0.0);
            return round_trip_factor(r1(energy), r2(energy), kc, gap);
        };
        auto integrand = [&](double k) {
            const Complex u = u_of_k(k);
            return k * k * ((1.0 + u) / (1.0 - u)).real();
        };
        const SinglePass p =
            integrate_kernel_axis(integrand, u_of_k, 0.0, k_f, {}, spec);
        return SinglePass{(4.0 / M_PI) * p.value, (4.0 / M_PI) * p.error,
                          p.poles};
    };
    return with_eta_extrapolation(run, spec.resolved_eta(fermi_energy), spec);
}

FluxResult momentum_flux_3d_zero_t(const ReflectionAmplitude& r1,
                                   const ReflectionAmplitude& r2, double gap,
                                   double kinetic_fermi,
                                   const QuadratureSpec& spec) {
    spec.validate();
    if (!(gap > 0.0))
        throw DomainError("momentum_flux_3d_zero_t requires gap > 0");
    if (!(kinetic_fermi > 0.0))
        throw DomainError("momentum_flux_3d_zero_t requires kinetic_fermi > 0 "
                          "(use evanescent_flux below the vacuum level)");
    const double k_max = std::sqrt(kinetic_fermi);

    auto run = [&](double eta) {
        auto u_of_k = [&](double k) {
            const Complex energy(k * k, eta);
            const Complex kc = longitudinal_wavenumber(energy, 0.0);
            return round_trip_factor(r1(energy), r2(energy), kc, gap);
        };
        auto integrand = [&](double k) {
            const Complex u = u_of_k(k);
            return (kinetic_fermi - k * k) * k * k *
                   ((1.0 + u) / (1.0 - u)).real();
        };
        const SinglePass p =
            integrate_kernel_axis(integrand, u_of_k, 0.0, k_max, {}, spec);
        return SinglePass{p.value / (M_PI * M_PI), p.error / (M_PI * M_PI),
                          p.poles};
    };
    return with_eta_extrapolation(run, spec.resolved_eta(kinetic_fermi), spec);
}

FluxResult evanescent_flux(const ReflectionAmplitude& r1,
                           const ReflectionAmplitude& r2, double gap,
                           double kappa_lo, double kappa_hi,
                           double kappa_fermi_sq,
                           std::span<const double> band_edges,
                           double fermi_scale, const QuadratureSpec& spec) {
    spec.validate();
    if (!(gap >= 0.0))
        throw DomainError("evanescent_flux requires gap >= 0");
    if (!(kappa_hi > kappa_lo) || kappa_lo < 0.0)
        throw DomainError("evanescent_flux requires 0 <= kappa_lo < kappa_hi");

    auto run = [&](double eta) {
        auto u_of_kappa = [&](double kappa) {
            const Complex energy(-kappa * kappa, eta);
            const Complex kc = longitudinal_wavenumber(energy, 0.0);
            return round_trip_factor(r1(energy), r2(energy), kc, gap);
        };
        auto integrand = [&](double kappa) {
            const Complex u = u_of_kappa(kappa);
            return (kappa_fermi_sq - kappa * kappa) * kappa * kappa *
                   (u / (1.0 - u)).imag();
        };
        const SinglePass p = integrate_kernel_axis(integrand, u_of_kappa,
                                                   kappa_lo, kappa_hi,
                                                   band_edges, spec);
        return SinglePass{(2.0 / (M_PI * M_PI)) * p.value,
                          (2.0 / (M_PI * M_PI)) * p.error, p.poles};
    };
    return with_eta_extrapolation(run, spec.resolved_eta(fermi_scale), spec);
}

FluxResult evanescent_force(const MaterialParams& mat1,
                            const MaterialParams& mat2, double gap,
                            const QuadratureSpec& spec) {
    if (std::abs(mat1.work_function - mat2.work_function) >
        1e-12 * std::max(1.0, std::max(mat1.fermi_energy, mat2.fermi_energy)))
        throw DomainError("evanescent_force requires a common work function "
                          "(shared vacuum and chemical potential)");
    const double kappa_lo = mat1.kappa_fermi;
    const double kappa_hi = std::max(mat1.kappa_zero, mat2.kappa_zero);
    const double edges[2] = {std::min(mat1.kappa_zero, mat2.kappa_zero),
                             kappa_hi};
    const double fermi_scale = std::max(mat1.fermi_energy, mat2.fermi_energy);

    FluxResult res = evanescent_flux(
        ReflectionAmplitude::step(mat1), ReflectionAmplitude::step(mat2), gap,
        kappa_lo, kappa_hi, mat1.work_function,
        std::span<const double>(edges, edges[0] < kappa_hi ? 1 : 0),
        fermi_scale, spec);

    if (res.error_estimate >
        std::max(spec.abs_tol, 10.0 * spec.rel_tol * std::abs(res.value)))
        throw ConvergenceError("evanescent_force: error estimate exceeds tolerance",
                               res.value, res.error_estimate);
    return res;
}

} // namespace tf
