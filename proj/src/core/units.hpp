#ifndef TF_CORE_UNITS_HPP
#define TF_CORE_UNITS_HPP

#include "core/errors.hpp"

namespace tf {

// Internal natural units: hbar = 2m = 1, so E = k^2. A UnitSystem records
// how many physical units one internal unit is worth; conversions happen
// only at I/O boundaries.
struct UnitSystem {
    double energy_scale = 1.0; // physical energy per internal energy unit
    double length_scale = 1.0; // physical length per internal length unit

    void validate() const {
        if (!(energy_scale > 0.0) || !(length_scale > 0.0))
            throw DomainError("unit scales must be positive");
    }
};

inline double energy_to_internal(double physical, const UnitSystem& u) {
    u.validate();
    return physical / u.energy_scale;
}
inline double energy_from_internal(double internal, const UnitSystem& u) {
    u.validate();
    return internal * u.energy_scale;
}
inline double length_to_internal(double physical, const UnitSystem& u) {
    u.validate();
    return physical / u.length_scale;
}
inline double length_from_internal(double internal, const UnitSystem& u) {
    u.validate();
    return internal * u.length_scale;
}

} // namespace tf

#endif
