#include "core/greens.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tf {

namespace {

struct GapParts {
    Complex left;       // e^{-ikz} + r1 e^{ikz}
    Complex right;      // e^{ik(z-L)} + r2 e^{-ik(z-L)}
    Complex left_dz;    // d/dz of left
    Complex right_dz;   // d/dz of right
};

GapParts evaluate_waves(const GapGreens& g, double zl, double zr) {
    const Complex ik(-g.k.imag(), g.k.real()); // i*k
    const Complex el = std::exp(-ik * zl);
    const Complex er = std::exp(ik * (zr - g.gap));
    GapParts p;
    p.left = el + g.r1 / el;
    p.left_dz = ik * (g.r1 / el - el);
    p.right = er + g.r2 / er;
    p.right_dz = ik * (er - g.r2 / er);
    return p;
}

Complex denominator(const GapGreens& g) {
    const Complex ik(-g.k.imag(), g.k.real());
    const Complex round_trip = g.r1 * g.r2 * std::exp(2.0 * ik * g.gap);
    const Complex den = 2.0 * ik * std::exp(-ik * g.gap) * (1.0 - round_trip);
    if (std::abs(den) < 1e-300)
        throw ResonanceError("gap Green's function at a cavity resonance; increase eta",
                             g.energy.real());
    return den;
}

} // namespace

GapGreens::GapGreens(Complex r1_, Complex r2_, double gap_, Complex energy_)
    : r1(r1_), r2(r2_), gap(gap_), energy(energy_),
      k(longitudinal_wavenumber(energy_, 0.0)) {
    if (!(gap_ > 0.0))
        throw DomainError("GapGreens requires a positive gap width");
}

Complex greens_value(const GapGreens& g, double z, double zp) {
    if (z < 0.0 || z > g.gap || zp < 0.0 || zp > g.gap)
        throw DomainError("greens_value: positions must lie inside the gap");
    const double zl = std::min(z, zp);
    const double zr = std::max(z, zp);
    const GapParts p = evaluate_waves(g, zl, zr);
    return p.left * p.right / denominator(g);
}

double effective_ldos(const GapGreens& g, double z) {
    if (z < 0.0 || z > g.gap)
        throw DomainError("effective_ldos: position must lie inside the gap");
    const GapParts p = evaluate_waves(g, z, z);
    const Complex k2 = g.k * g.k;
    const Complex val = (p.left * p.right + p.left_dz * p.right_dz / k2) / denominator(g);
    return -val.imag() / (2.0 * M_PI);
}

double flux_from_greens(const GapGreens& g, double z) {
    if (z < 0.0 || z > g.gap)
        throw DomainError("flux_from_greens: position must lie inside the gap");
    const GapParts p = evaluate_waves(g, z, z);
    const Complex k2 = g.k * g.k;
    const Complex val = (k2 * p.left * p.right + p.left_dz * p.right_dz) / denominator(g);
    return -val.imag() / M_PI;
}

} // namespace tf
