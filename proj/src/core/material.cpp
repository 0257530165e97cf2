#include "core/material.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tf {

MaterialParams make_material(double fermi_energy, double work_function) {
    if (!(fermi_energy > 0.0) || !std::isfinite(fermi_energy))
        throw DomainError("fermi_energy must be positive and finite");
    if (!(work_function >= 0.0) || !std::isfinite(work_function))
        throw DomainError("work_function must be non-negative and finite");

    MaterialParams m;
    m.fermi_energy = fermi_energy;
    m.work_function = work_function;
    m.k_fermi = std::sqrt(fermi_energy);
    m.kappa_fermi = std::sqrt(work_function);
    m.kappa_zero = std::sqrt(work_function + fermi_energy);
    m.density = m.k_fermi * m.k_fermi * m.k_fermi / (3.0 * M_PI * M_PI);
    return m;
}

} // namespace tf
