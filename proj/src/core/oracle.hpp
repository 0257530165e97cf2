#ifndef TF_CORE_ORACLE_HPP
#define TF_CORE_ORACLE_HPP

#include "core/models.hpp"
#include "core/scattering.hpp"

namespace tf {

// Brute-force validator: 3-point finite differences on a hard-walled box,
// eigenvalues by Sturm-sequence bisection, Richardson improvement in h.
// Shares nothing with the reflection-amplitude route.
struct GridSpec {
    double spacing = 0.0;          // <= 0: auto, 0.01 / sqrt(max well depth)
    double padding = 0.0;          // <= 0: auto, 40 / sqrt(-E_max), capped
    double proxy_slab_width = 0.0; // <= 0: auto, 30 / k_F
    bool check_padding = true;     // verify doubling the padding is inert
};

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending, below the cutoff, vacuum-referenced
    int grid_points = 0;
    double spacing_used = 0.0;
    double padding_used = 0.0;
};

// All eigenvalues below e_max of the discretized Hamiltonian, Richardson
// extrapolated over spacings h and h/2. Profile terminals must be vacuum
// (zero) so the bound-state problem is well posed below the vacuum level.
// Throws GeometryError if doubling the padding moves a retained level.
SpectrumResult bound_states(const PotentialProfile& profile, double e_max,
                            const GridSpec& grid);

// Zero-temperature grand potential per unit area at fixed chemical
// potential mu, transverse channels integrated:
//   Omega/A = -(1/4pi) sum_n (mu - eps_n)^2   over eps_n < mu
// (spin degeneracy included in the prefactor).
double grand_potential_per_area(const PotentialProfile& profile, double mu,
                                const GridSpec& grid);

struct OracleForce {
    double value = 0.0;
    double error_estimate = 0.0; // from step halving
};

// Central-difference force -d(Omega/A)/dL. Semi-infinite bodies are proxied
// by slabs of width proxy_slab_width; films use their exact widths; Bulk
// differentiates against the slab width itself (the pressure).
// delta_l <= 0 selects the default 1e-3/k_F.
OracleForce oracle_force(const Geometry& geometry, double delta_l,
                         const GridSpec& grid);

} // namespace tf

#endif
