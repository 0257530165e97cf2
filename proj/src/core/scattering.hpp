#ifndef TF_CORE_SCATTERING_HPP
#define TF_CORE_SCATTERING_HPP

#include <complex>
#include <functional>
#include <vector>

#include "core/material.hpp"

namespace tf {

using Complex = std::complex<double>;

// k = sqrt(E - V) on the branch with Im k >= 0, so evanescent waves decay
// into barriers and E -> E + i*eta selects the retarded solution.
Complex longitudinal_wavenumber(Complex energy, double potential);

// Step reflection amplitude for an evanescent wave in vacuum (decay constant
// kappa > 0) incident on a semi-infinite conductor:
//   r = (i kappa - k_M) / (i kappa + k_M),  k_M = sqrt(kappa_0^2 - kappa^2).
Complex step_reflection(double kappa, const MaterialParams& mat);

// Ordered piecewise-constant 1D potential: a left semi-infinite terminal,
// zero or more finite layers, a right semi-infinite terminal. With zero
// layers the profile is a single step.
struct PotentialProfile {
    struct Layer {
        double thickness; // > 0
        double potential;
    };

    double left_terminal = 0.0;
    std::vector<Layer> layers;
    double right_terminal = 0.0;

    // vacuum | well of depth -(W + E_F), width d | vacuum
    static PotentialProfile free_standing_film(const MaterialParams& mat, double width);
    // vacuum | conductor (band bottom -(W + E_F))
    static PotentialProfile metal_step(const MaterialParams& mat);

    PotentialProfile mirrored() const;
    double total_layer_width() const;
    void validate() const; // throws DomainError on bad layer widths
};

// 2x2 transfer matrix in amplitude form, relating plane-wave coefficients
// (a, b) of psi = a e^{ikz} + b e^{-ikz} on the right of a section to those
// on the left: v_left = M v_right. Entries are stored rescaled by
// exp(log_scale) to keep thick evanescent layers representable; reflection
// ratios are scale-free, transmissions must reapply the scale.
struct TransferMatrix {
    Complex m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
    Complex k_left{0.0}, k_right{0.0};
    double log_scale = 0.0;

    Complex reflection_from_left() const;  // r = m21 / m11
    Complex reflection_from_right() const; // r = -m12 / m11
    Complex transmission_from_left() const; // t = exp(-log_scale) / m11
};

// Plane-wave matching across a potential step between media with wavenumbers
// k1 (left) and k2 (right). Throws ResonanceError if k1 == 0 (degenerate
// branch; perturb the energy by eta instead).
TransferMatrix interface_matrix(Complex k1, Complex k2);

// Phase/decay accumulation across a uniform layer of width d >= 0.
TransferMatrix propagation_matrix(Complex k, double d);

// Matrix product A*B with accumulated scales; A is the section further left.
TransferMatrix compose(const TransferMatrix& a, const TransferMatrix& b);

enum class Side { left, right };

// Reflection amplitude of the full stack at (complex) energy E, seen from
// the given terminal. Reduces to the direct step formula for zero layers.
Complex stack_reflection(const PotentialProfile& profile, Complex energy, Side from);

// Transfer matrix of the whole profile (left terminal to right terminal).
TransferMatrix stack_matrix(const PotentialProfile& profile, Complex energy);

// Reflection amplitude as a function of complex energy measured from the
// potential of the region the wave lives in (the gap). Wraps the step and
// slab evaluators plus constants, so flux integrals take one callable type.
class ReflectionAmplitude {
public:
    ReflectionAmplitude() : fn_([](Complex) { return Complex(0.0); }) {}

    static ReflectionAmplitude constant(Complex r);
    static ReflectionAmplitude step(const MaterialParams& mat);
    static ReflectionAmplitude slab(const MaterialParams& mat, double width);

    Complex operator()(Complex energy) const { return fn_(energy); }

private:
    explicit ReflectionAmplitude(std::function<Complex(Complex)> fn) : fn_(std::move(fn)) {}
    std::function<Complex(Complex)> fn_;
};

} // namespace tf

#endif
