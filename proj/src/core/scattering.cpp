#include "core/scattering.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tf {

Complex longitudinal_wavenumber(Complex energy, double potential) {
    Complex k = std::sqrt(energy - potential);
    if (k.imag() < 0.0)
        k = -k;
    return k;
}

Complex step_reflection(double kappa, const MaterialParams& mat) {
    if (!(kappa > 0.0))
        throw DomainError("step_reflection requires kappa > 0");
    const Complex ik(0.0, kappa);
    const Complex k_m =
        longitudinal_wavenumber(Complex(-kappa * kappa), mat.band_bottom());
    return (ik - k_m) / (ik + k_m);
}

PotentialProfile PotentialProfile::free_standing_film(const MaterialParams& mat,
                                                      double width) {
    PotentialProfile p;
    p.layers.push_back({width, mat.band_bottom()});
    p.validate();
    return p;
}

PotentialProfile PotentialProfile::metal_step(const MaterialParams& mat) {
    PotentialProfile p;
    p.right_terminal = mat.band_bottom();
    return p;
}

PotentialProfile PotentialProfile::mirrored() const {
    PotentialProfile p;
    p.left_terminal = right_terminal;
    p.right_terminal = left_terminal;
    p.layers.assign(layers.rbegin(), layers.rend());
    return p;
}

double PotentialProfile::total_layer_width() const {
    double w = 0.0;
    for (const auto& l : layers)
        w += l.thickness;
    return w;
}

void PotentialProfile::validate() const {
    for (const auto& l : layers)
        if (!(l.thickness > 0.0) || !std::isfinite(l.thickness))
            throw DomainError("layer thickness must be positive and finite");
}

Complex TransferMatrix::reflection_from_left() const { return m21 / m11; }
Complex TransferMatrix::reflection_from_right() const { return -m12 / m11; }
Complex TransferMatrix::transmission_from_left() const {
    return std::exp(-log_scale) / m11;
}

TransferMatrix interface_matrix(Complex k1, Complex k2) {
    if (k1 == Complex(0.0))
        throw ResonanceError("interface_matrix: zero wavenumber on the incidence side", 0.0);
    const Complex q = k2 / k1;
    TransferMatrix m;
    m.m11 = 0.5 * (1.0 + q);
    m.m12 = 0.5 * (1.0 - q);
    m.m21 = 0.5 * (1.0 - q);
    m.m22 = 0.5 * (1.0 + q);
    m.k_left = k1;
    m.k_right = k2;
    return m;
}

TransferMatrix propagation_matrix(Complex k, double d) {
    if (d < 0.0)
        throw DomainError("propagation_matrix requires d >= 0");
    // v_left = diag(e^{-ikd}, e^{+ikd}) v_right; with Im k >= 0 the first
    // entry grows like e^{Im k d}. Factor that growth into log_scale so the
    // stored entries stay bounded for thick evanescent layers.
    TransferMatrix m;
    const double grow = k.imag() * d;
    m.m11 = std::exp(Complex(0.0, -k.real() * d));
    m.m22 = std::exp(Complex(0.0, k.real() * d) - 2.0 * grow);
    m.log_scale = grow;
    m.k_left = k;
    m.k_right = k;
    return m;
}

TransferMatrix compose(const TransferMatrix& a, const TransferMatrix& b) {
    TransferMatrix m;
    m.m11 = a.m11 * b.m11 + a.m12 * b.m21;
    m.m12 = a.m11 * b.m12 + a.m12 * b.m22;
    m.m21 = a.m21 * b.m11 + a.m22 * b.m21;
    m.m22 = a.m21 * b.m12 + a.m22 * b.m22;
    m.log_scale = a.log_scale + b.log_scale;
    m.k_left = a.k_left;
    m.k_right = b.k_right;

    // Renormalize so repeated composition cannot overflow.
    double mag = std::max(std::max(std::abs(m.m11), std::abs(m.m12)),
                          std::max(std::abs(m.m21), std::abs(m.m22)));
    if (!std::isfinite(mag))
        throw ConvergenceError("transfer-matrix scaling failed (non-finite entries)", 0.0, 0.0);
    if (mag > 1e100) {
        const double s = std::log(mag);
        const double inv = 1.0 / mag;
        m.m11 *= inv;
        m.m12 *= inv;
        m.m21 *= inv;
        m.m22 *= inv;
        m.log_scale += s;
    }
    return m;
}

TransferMatrix stack_matrix(const PotentialProfile& profile, Complex energy) {
    profile.validate();
    Complex k_prev = longitudinal_wavenumber(energy, profile.left_terminal);
    TransferMatrix m;
    m.k_left = k_prev;
    m.k_right = k_prev;
    for (const auto& layer : profile.layers) {
        const Complex k = longitudinal_wavenumber(energy, layer.potential);
        m = compose(m, interface_matrix(k_prev, k));
        m = compose(m, propagation_matrix(k, layer.thickness));
        k_prev = k;
    }
    const Complex k_right = longitudinal_wavenumber(energy, profile.right_terminal);
    m = compose(m, interface_matrix(k_prev, k_right));
    return m;
}

Complex stack_reflection(const PotentialProfile& profile, Complex energy, Side from) {
    const TransferMatrix m = stack_matrix(profile, energy);
    return from == Side::left ? m.reflection_from_left() : m.reflection_from_right();
}

ReflectionAmplitude ReflectionAmplitude::constant(Complex r) {
    return ReflectionAmplitude([r](Complex) { return r; });
}

ReflectionAmplitude ReflectionAmplitude::step(const MaterialParams& mat) {
    const double bottom = mat.band_bottom();
    return ReflectionAmplitude([bottom](Complex energy) {
        const Complex k_gap = longitudinal_wavenumber(energy, 0.0);
        const Complex k_m = longitudinal_wavenumber(energy, bottom);
        return (k_gap - k_m) / (k_gap + k_m);
    });
}

ReflectionAmplitude ReflectionAmplitude::slab(const MaterialParams& mat, double width) {
    if (!(width >= 0.0))
        throw DomainError("slab width must be non-negative");
    if (width == 0.0)
        return constant(Complex(0.0));
    const PotentialProfile film = PotentialProfile::free_standing_film(mat, width);
    return ReflectionAmplitude([film](Complex energy) {
        return stack_reflection(film, energy, Side::left);
    });
}

} // namespace tf
