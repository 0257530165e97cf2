#ifndef TF_CORE_STRESS_HPP
#define TF_CORE_STRESS_HPP

#include "core/material.hpp"
#include "core/quadrature.hpp"
#include "core/scattering.hpp"

namespace tf {

// Result of a momentum-flux integral. `value` follows the sign convention
// that a negative force per unit area is attractive. With Richardson
// extrapolation enabled, eta_used reports the base shift (the halved one is
// also evaluated internally).
struct FluxResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double eta_used = 0.0;
    int resonances_detected = 0;
};

// Round-trip cavity factor (1 + u)/(1 - u) with u = r1 r2 e^{2ikL}.
// Throws ResonanceError on an exact pole. If near_resonance is given, it is
// set when |u| >= 1 - 1e-12 so callers know to subdivide around this k.
Complex round_trip_kernel(Complex r1, Complex r2, Complex k, double L,
                          bool* near_resonance = nullptr);

// Occupied-state momentum flux of a 1D gap at zero temperature (spin
// factor 2 included):  T = (4/pi) Re Int_0^{k_F} dk k^2 (1+u)/(1-u),
// with reflection amplitudes evaluated at E = k^2 + i eta.
FluxResult momentum_flux_1d(const ReflectionAmplitude& r1,
                            const ReflectionAmplitude& r2, double gap,
                            double fermi_energy, const QuadratureSpec& spec);

// 3D momentum-flux density with the transverse channels summed at T = 0
// (spin included):  (1/pi^2) Re Int_0^{sqrt(K_F)} dk (K_F - k^2) k^2 (1+u)/(1-u).
// kinetic_fermi is the Fermi-level kinetic energy in the evaluation region
// and must be positive (the evanescent sector has its own entry point).
FluxResult momentum_flux_3d_zero_t(const ReflectionAmplitude& r1,
                                   const ReflectionAmplitude& r2, double gap,
                                   double kinetic_fermi,
                                   const QuadratureSpec& spec);

// Evanescent-sector force per unit area across a vacuum gap for arbitrary
// reflection evaluators:
//   F/A = (2/pi^2) Im Int_{kappa_lo}^{kappa_hi} dkappa
//         (kappa_F^2 - kappa^2) kappa^2 u/(1-u),
// u evaluated at E = -kappa^2 + i eta. band_edges get graded meshes (the
// kappa where some k_M vanishes); kernel poles are located and meshed
// automatically. fermi_scale sets the automatic eta.
FluxResult evanescent_flux(const ReflectionAmplitude& r1,
                           const ReflectionAmplitude& r2, double gap,
                           double kappa_lo, double kappa_hi,
                           double kappa_fermi_sq,
                           std::span<const double> band_edges,
                           double fermi_scale, const QuadratureSpec& spec);

// Force between two semi-infinite conductors with abrupt surface steps.
// Requires a common work function (shared vacuum and chemical potential);
// Fermi energies may differ. Negative = attraction.
FluxResult evanescent_force(const MaterialParams& mat1,
                            const MaterialParams& mat2, double gap,
                            const QuadratureSpec& spec);

// Poles of 1 - u on a real axis segment, with estimated Lorentzian widths.
// u must be callable at real x; poles are crossings of u through 1.
struct PoleScan {
    std::vector<double> location;
    std::vector<double> width;
};
PoleScan scan_kernel_poles(const std::function<Complex(double)>& u, double a,
                           double b, int coarse_points = 401);

} // namespace tf

#endif
