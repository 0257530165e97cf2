#include "tunnelforce/tunnelforce.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/errors.hpp"
#include "core/material.hpp"
#include "core/models.hpp"
#include "core/oracle.hpp"
#include "core/quadrature.hpp"

// Opaque handle definitions. Handles are immutable from the library's point
// of view once handed to a computation, so sharing across threads is safe.
struct tf_material {
    tf::MaterialParams params;
};
struct tf_quadspec {
    tf::QuadratureSpec spec;
};
struct tf_gridspec {
    tf::GridSpec grid;
};

namespace {

thread_local std::string g_last_error;

tf_status fail(tf_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

// Runs `fn`, translating C++ exceptions into status codes.
template <typename Fn>
tf_status guarded(Fn&& fn) {
    try {
        fn();
        return TF_OK;
    } catch (const tf::DomainError& e) {
        return fail(TF_ERROR_DOMAIN, e.what());
    } catch (const tf::ConvergenceError& e) {
        return fail(TF_ERROR_CONVERGENCE, e.what());
    } catch (const tf::ResonanceError& e) {
        return fail(TF_ERROR_RESONANCE, e.what());
    } catch (const tf::GeometryError& e) {
        return fail(TF_ERROR_GEOMETRY, e.what());
    } catch (const std::exception& e) {
        return fail(TF_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(TF_ERROR_INTERNAL, "unknown error");
    }
}

const tf::QuadratureSpec& spec_or_default(const tf_quadspec* spec) {
    static const tf::QuadratureSpec defaults;
    return spec ? spec->spec : defaults;
}

const tf::GridSpec& grid_or_default(const tf_gridspec* grid) {
    static const tf::GridSpec defaults;
    return grid ? grid->grid : defaults;
}

void copy_flux(const tf::FluxResult& in, tf_flux_result* out) {
    if (!out)
        return;
    out->value = in.value;
    out->error_estimate = in.error_estimate;
    out->eta_used = in.eta_used;
    out->resonances = in.resonances_detected;
}

} // namespace

extern "C" {

const char* tf_version(void) { return "0.1.0"; }

const char* tf_status_name(tf_status status) {
    switch (status) {
    case TF_OK: return "ok";
    case TF_ERROR_DOMAIN: return "domain error";
    case TF_ERROR_CONVERGENCE: return "convergence failure";
    case TF_ERROR_RESONANCE: return "unhandled resonance";
    case TF_ERROR_GEOMETRY: return "geometry error";
    case TF_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tf_last_error(void) { return g_last_error.c_str(); }

tf_status tf_material_create(double fermi_energy, double work_function,
                             tf_material** out) {
    if (!out)
        return fail(TF_ERROR_DOMAIN, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        *out = new tf_material{tf::make_material(fermi_energy, work_function)};
    });
}

void tf_material_destroy(tf_material* mat) { delete mat; }

tf_status tf_material_get(const tf_material* mat, double* fermi_energy,
                          double* work_function, double* k_fermi,
                          double* kappa_fermi, double* kappa_zero,
                          double* density) {
    if (!mat)
        return fail(TF_ERROR_DOMAIN, "null material handle");
    if (fermi_energy) *fermi_energy = mat->params.fermi_energy;
    if (work_function) *work_function = mat->params.work_function;
    if (k_fermi) *k_fermi = mat->params.k_fermi;
    if (kappa_fermi) *kappa_fermi = mat->params.kappa_fermi;
    if (kappa_zero) *kappa_zero = mat->params.kappa_zero;
    if (density) *density = mat->params.density;
    return TF_OK;
}

tf_status tf_quadspec_create(tf_quadspec** out) {
    if (!out)
        return fail(TF_ERROR_DOMAIN, "null output pointer");
    *out = new tf_quadspec{};
    return TF_OK;
}

void tf_quadspec_destroy(tf_quadspec* spec) { delete spec; }

tf_status tf_quadspec_set_tolerances(tf_quadspec* spec, double abs_tol,
                                     double rel_tol) {
    if (!spec)
        return fail(TF_ERROR_DOMAIN, "null quadspec handle");
    return guarded([&] {
        tf::QuadratureSpec candidate = spec->spec;
        candidate.abs_tol = abs_tol;
        candidate.rel_tol = rel_tol;
        candidate.validate();
        spec->spec = candidate;
    });
}

tf_status tf_quadspec_set_eta(tf_quadspec* spec, double eta, int extrapolate) {
    if (!spec)
        return fail(TF_ERROR_DOMAIN, "null quadspec handle");
    spec->spec.eta = eta > 0.0 ? eta : 0.0;
    spec->spec.eta_extrapolate = extrapolate != 0;
    return TF_OK;
}

tf_status tf_quadspec_set_max_subdivisions(tf_quadspec* spec,
                                           int max_subdivisions) {
    if (!spec)
        return fail(TF_ERROR_DOMAIN, "null quadspec handle");
    return guarded([&] {
        tf::QuadratureSpec candidate = spec->spec;
        candidate.max_subdivisions = max_subdivisions;
        candidate.validate();
        spec->spec = candidate;
    });
}

tf_status tf_fermi_pressure(const tf_material* mat, const tf_quadspec* spec,
                            double* closed_form, tf_flux_result* numeric) {
    if (!mat)
        return fail(TF_ERROR_DOMAIN, "null material handle");
    return guarded([&] {
        const tf::PressureResult p =
            tf::fermi_pressure(mat->params, spec_or_default(spec));
        if (closed_form)
            *closed_form = p.closed_form;
        if (numeric) {
            numeric->value = p.numeric;
            numeric->error_estimate = p.numeric_error;
            numeric->eta_used = 0.0;
            numeric->resonances = 0;
        }
    });
}

tf_status tf_contact_force(const tf_material* mat, double* force_per_area) {
    if (!mat || !force_per_area)
        return fail(TF_ERROR_DOMAIN, "null argument");
    *force_per_area = tf::contact_force(mat->params);
    return TF_OK;
}

tf_status tf_force_semiinfinite(const tf_material* mat1,
                                const tf_material* mat2, double gap,
                                const tf_quadspec* spec, tf_flux_result* out) {
    if (!mat1 || !mat2)
        return fail(TF_ERROR_DOMAIN, "null material handle");
    return guarded([&] {
        copy_flux(tf::evanescent_force(mat1->params, mat2->params, gap,
                                       spec_or_default(spec)),
                  out);
    });
}

tf_status tf_force_thin_films(const tf_material* mat, double d1, double d2,
                              double gap, const tf_quadspec* spec,
                              tf_flux_result* out) {
    if (!mat)
        return fail(TF_ERROR_DOMAIN, "null material handle");
    return guarded([&] {
        const tf::ForcePoint p = tf::force_thin_films(
            mat->params, d1, d2, gap, spec_or_default(spec));
        if (out) {
            out->value = p.force_per_area;
            out->error_estimate = p.error_estimate;
            out->eta_used = p.eta_used;
            out->resonances = p.resonances;
        }
    });
}

tf_status tf_critical_film_width(const tf_material* mat, double* width) {
    if (!mat || !width)
        return fail(TF_ERROR_DOMAIN, "null argument");
    *width = tf::critical_film_width(mat->params);
    return TF_OK;
}

tf_status tf_surface_energy(const tf_material* mat, const tf_quadspec* spec,
                            double* per_surface, double* work_of_separation,
                            double* error_estimate) {
    if (!mat)
        return fail(TF_ERROR_DOMAIN, "null material handle");
    return guarded([&] {
        const tf::SurfaceEnergy s =
            tf::surface_energy(mat->params, spec_or_default(spec));
        if (per_surface)
            *per_surface = s.per_surface;
        if (work_of_separation)
            *work_of_separation = s.work_of_separation;
        if (error_estimate)
            *error_estimate = s.error_estimate;
    });
}

tf_status tf_force_extremum_in_w(double gap, double fermi_energy,
                                 const tf_quadspec* spec, double* w_star,
                                 double* force_star) {
    return guarded([&] {
        const tf::WExtremum e =
            tf::force_extremum_in_w(gap, fermi_energy, spec_or_default(spec));
        if (w_star)
            *w_star = e.w_star;
        if (force_star)
            *force_star = e.force_star;
    });
}

tf_status tf_gridspec_create(tf_gridspec** out) {
    if (!out)
        return fail(TF_ERROR_DOMAIN, "null output pointer");
    *out = new tf_gridspec{};
    return TF_OK;
}

void tf_gridspec_destroy(tf_gridspec* grid) { delete grid; }

tf_status tf_gridspec_set(tf_gridspec* grid, double spacing, double padding,
                          double proxy_slab_width) {
    if (!grid)
        return fail(TF_ERROR_DOMAIN, "null gridspec handle");
    if (spacing > 0.0)
        grid->grid.spacing = spacing;
    if (padding > 0.0)
        grid->grid.padding = padding;
    if (proxy_slab_width > 0.0)
        grid->grid.proxy_slab_width = proxy_slab_width;
    return TF_OK;
}

tf_status tf_oracle_force_semiinfinite(const tf_material* mat, double gap,
                                       double delta_l, const tf_gridspec* grid,
                                       double* force, double* error_estimate) {
    if (!mat || !force)
        return fail(TF_ERROR_DOMAIN, "null argument");
    return guarded([&] {
        const tf::Geometry g =
            tf::SemiInfinitePair{mat->params, mat->params, gap};
        const tf::OracleForce f =
            tf::oracle_force(g, delta_l, grid_or_default(grid));
        *force = f.value;
        if (error_estimate)
            *error_estimate = f.error_estimate;
    });
}

tf_status tf_oracle_force_films(const tf_material* mat, double d1, double d2,
                                double gap, double delta_l,
                                const tf_gridspec* grid, double* force,
                                double* error_estimate) {
    if (!mat || !force)
        return fail(TF_ERROR_DOMAIN, "null argument");
    return guarded([&] {
        const tf::Geometry g = tf::FilmPair{mat->params, d1, d2, gap};
        const tf::OracleForce f =
            tf::oracle_force(g, delta_l, grid_or_default(grid));
        *force = f.value;
        if (error_estimate)
            *error_estimate = f.error_estimate;
    });
}

} // extern "C"
