#ifndef TF_CORE_QUADRATURE_HPP
#define TF_CORE_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace tf {

// Controls every integral in the library. eta <= 0 means "automatic":
// resolved to 1e-6 * E_F wherever a material sets the scale.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    double eta = 0.0;
    bool eta_extrapolate = true;

    void validate() const;
    double resolved_eta(double fermi_energy) const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

// Adaptive Gauss-Kronrod 7/15 subdivision quadrature on [a, b], a < b.
// Initial breakpoints force interval boundaries (used to straddle known
// poles and band edges); they must lie inside (a, b) or they are ignored.
// Deterministic for fixed inputs. Throws ConvergenceError with the partial
// result when max_subdivisions is exhausted.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, const QuadratureSpec& spec,
                              std::span<const double> breakpoints = {});

// Geometrically graded breakpoints approaching `center` from both sides,
// from `outer` down to `inner` scale; all clipped to (a, b). Used to mesh
// integrable endpoint growth and eta-width Lorentzians.
void append_graded_breakpoints(std::vector<double>& breakpoints, double a,
                               double b, double center, double inner,
                               double outer);

} // namespace tf

#endif
