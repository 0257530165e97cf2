#ifndef TF_CORE_GREENS_HPP
#define TF_CORE_GREENS_HPP

#include "core/scattering.hpp"

namespace tf {

// Scattering-form Green's function of a gap of width L bounded by structures
// with reflection amplitudes r1 (left, referenced at z = 0) and r2 (right,
// referenced at z = L), at complex energy E measured from the gap potential:
//
//   G_E(z,z') = (e^{-ik z_L} + r1 e^{ik z_L}) (e^{ik(z_R - L)} + r2 e^{-ik(z_R - L)})
//               / [ 2ik e^{-ikL} (1 - r1 r2 e^{2ikL}) ]
//
// with z_L = min(z,z'), z_R = max(z,z'), k = sqrt(E) on the Im k >= 0 branch
// (2m/hbar^2 = 1 in internal units). Give E a positive imaginary part to
// stay off the cavity resonances.
struct GapGreens {
    Complex r1, r2;
    double gap;
    Complex energy;
    Complex k;

    GapGreens(Complex r1_, Complex r2_, double gap_, Complex energy_);
};

// Throws ResonanceError when the cavity denominator underflows.
Complex greens_value(const GapGreens& g, double z, double zp);

// Effective local density of states,
//   rho^ef_E(z) = -(1/2pi) Im[ G + (1/k^2) d_z d_z' G ]_{z' -> z},
// with the coincidence limit taken analytically from the closed form.
double effective_ldos(const GapGreens& g, double z);

// Momentum-flux energy density at fixed E (occupation not included),
//   -(1/pi) Im[ k^2 G + d_z d_z' G ]_{z' -> z},
// independent of z for any r1, r2 up to roundoff.
double flux_from_greens(const GapGreens& g, double z);

} // namespace tf

#endif
