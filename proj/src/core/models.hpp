#ifndef TF_CORE_MODELS_HPP
#define TF_CORE_MODELS_HPP

#include <string>
#include <variant>
#include <vector>

#include "core/material.hpp"
#include "core/quadrature.hpp"
#include "core/stress.hpp"

namespace tf {

// The scenarios the library evaluates.
struct SemiInfinitePair {
    MaterialParams mat1, mat2;
    double gap;
};
struct FilmPair {
    MaterialParams mat;
    double d1, d2;
    double gap;
};
struct Bulk {
    MaterialParams mat;
};
using Geometry = std::variant<SemiInfinitePair, FilmPair, Bulk>;

struct ForcePoint {
    double gap = 0.0;
    double force_per_area = 0.0;
    double error_estimate = 0.0;
    double eta_used = 0.0;
    int resonances = 0;
};

// One tabulated sweep, ready for CSV/JSON emission. status: 0 = ok,
// nonzero = the per-point evaluation failed (value then carries the partial
// result if any).
struct SweepResult {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<double> force;
    std::vector<double> error;
    std::vector<int> status;
};

struct PressureResult {
    double closed_form = 0.0;   // 2 n E_F / 5
    double numeric = 0.0;       // flux integral with the surface reflection off
    double numeric_error = 0.0;
    double rel_diff = 0.0;
};

// Closed form and numeric route must agree to 1e-8 relative; throws
// ConvergenceError otherwise.
PressureResult fermi_pressure(const MaterialParams& mat, const QuadratureSpec& spec);

// Contact force -(k_F^3/pi^2)(E_F/5 + W/3); always negative.
double contact_force(const MaterialParams& mat);

ForcePoint force_semiinfinite(const MaterialParams& mat1, const MaterialParams& mat2,
                              double gap, const QuadratureSpec& spec);

// Evanescent-sector force between two free-standing films of one material at
// fixed chemical potential.
ForcePoint force_thin_films(const MaterialParams& mat, double d1, double d2,
                            double gap, const QuadratureSpec& spec);

// Smallest width at which an isolated film holds a longitudinal level below
// the chemical potential: root of k_F tan(k_F d / 2) = kappa_F, i.e.
// d_c = (2/k_F) atan(kappa_F / k_F), unique in (0, pi/k_F).
double critical_film_width(const MaterialParams& mat);

struct SurfaceEnergy {
    double per_surface = 0.0;        // work of separation split over 2 surfaces
    double work_of_separation = 0.0; // -Int_0^inf (F/A) dL
    double error_estimate = 0.0;
    double l_max = 0.0;              // truncation point actually used
};
SurfaceEnergy surface_energy(const MaterialParams& mat, const QuadratureSpec& spec);

struct WExtremum {
    double w_star = 0.0;     // work function of largest |F/A|
    double force_star = 0.0; // (signed) force there
};
// Golden-section maximum of |F/A| over W in (0, 20 E_F] at fixed gap.
// Throws DomainError when no interior maximum exists (e.g. at contact).
WExtremum force_extremum_in_w(double gap, double fermi_energy, const QuadratureSpec& spec);

} // namespace tf

#endif
