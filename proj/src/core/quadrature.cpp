#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace tf {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 10)
        throw DomainError("max_subdivisions must be at least 10");
}

double QuadratureSpec::resolved_eta(double fermi_energy) const {
    if (eta > 0.0)
        return eta;
    return 1e-6 * fermi_energy;
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants), for [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1)
            resg += kWg[j / 2] * sum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    Segment s;
    s.a = a;
    s.b = b;
    s.value = resk * half;
    resabs *= half;
    resasc *= half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    s.error = err;
    return s;
}

} // namespace

void append_graded_breakpoints(std::vector<double>& breakpoints, double a,
                               double b, double center, double inner,
                               double outer) {
    if (!(inner > 0.0) || !(outer > inner))
        return;
    for (double w = inner; w < outer; w *= 4.0) {
        for (double x : {center - w, center + w})
            if (x > a && x < b)
                breakpoints.push_back(x);
    }
    if (center > a && center < b)
        breakpoints.push_back(center);
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, const QuadratureSpec& spec,
                              std::span<const double> breakpoints) {
    spec.validate();
    if (!(a < b))
        throw DomainError("integrate_adaptive requires a < b");

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b)
            edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Segment> segs;
    segs.reserve(edges.size() + 64);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        segs.push_back(gk15(f, edges[i], edges[i + 1]));

    int splits = 0;
    const double min_width = (b - a) * std::numeric_limits<double>::epsilon();
    while (true) {
        double total = 0.0, err = 0.0;
        for (const auto& s : segs) {
            total += s.value;
            err += s.error;
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= target)
            return {total, err, splits};
        if (splits >= spec.max_subdivisions)
            throw ConvergenceError("integrate_adaptive: subdivision limit reached",
                                   total, err);

        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error)
                worst = i;
        const double wa = segs[worst].a, wb = segs[worst].b;
        const double mid = 0.5 * (wa + wb);
        if (wb - wa < min_width || mid <= wa || mid >= wb)
            throw ConvergenceError(
                "integrate_adaptive: interval too small to subdivide further",
                total, err);
        segs[worst] = gk15(f, wa, mid);
        segs.push_back(gk15(f, mid, wb));
        ++splits;
    }
}

} // namespace tf
