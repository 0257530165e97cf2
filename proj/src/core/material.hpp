#ifndef TF_CORE_MATERIAL_HPP
#define TF_CORE_MATERIAL_HPP

namespace tf {

// One conductor in internal units (hbar = 2m = 1). The vacuum level is the
// energy zero: the band bottom sits at -(W + E_F), the chemical potential
// at -W. Immutable after construction.
struct MaterialParams {
    double fermi_energy;  // E_F > 0
    double work_function; // W >= 0
    double k_fermi;       // sqrt(E_F)
    double kappa_fermi;   // sqrt(W), vacuum decay constant at the Fermi level
    double kappa_zero;    // sqrt(W + E_F), decay constant at the band bottom
    double density;       // n = k_F^3 / 3 pi^2

    double band_bottom() const { return -(work_function + fermi_energy); }
    double chemical_potential() const { return -work_function; }
};

// Throws DomainError unless fermi_energy > 0 and work_function >= 0.
MaterialParams make_material(double fermi_energy, double work_function);

} // namespace tf

#endif
