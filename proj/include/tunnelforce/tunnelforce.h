#ifndef TUNNELFORCE_H
#define TUNNELFORCE_H

/* tunnelforce -- tunneling-induced forces between conductors from electronic
 * reflection amplitudes.
 *
 * C interface to the tunnelforce core. All quantities are in the library's
 * internal natural units, hbar = 2m = 1, so energies are squared wavenumbers
 * (E = k^2) and lengths are inverse wavenumbers. The vacuum level is the
 * energy zero; a conductor with Fermi energy E_F and work function W has its
 * band bottom at -(W + E_F) and its chemical potential at -W.
 *
 * Conventions:
 *   - Forces are per unit area; negative values mean attraction.
 *   - All handles are opaque; create/destroy pairs own them.
 *   - Functions return TF_OK on success. On failure the returned code
 *     classifies the error and tf_last_error() gives a thread-local detail
 *     message valid until the next failing call on the same thread.
 *
 * The library is thread-safe: handles are immutable after configuration and
 * may be shared across threads; concurrent calls do not interfere.
 */

#include <stddef.h>

#if defined(_WIN32)
#  define TF_API __declspec(dllexport)
#else
#  define TF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
    TF_OK = 0,
    TF_ERROR_DOMAIN = 1,      /* invalid argument / parameter out of domain */
    TF_ERROR_CONVERGENCE = 2, /* quadrature failed to meet tolerances */
    TF_ERROR_RESONANCE = 3,   /* unhandled pole of the round-trip kernel */
    TF_ERROR_GEOMETRY = 4,    /* grid/padding self-check failed */
    TF_ERROR_INTERNAL = 5
} tf_status;

typedef struct tf_material tf_material;   /* conductor parameters */
typedef struct tf_quadspec tf_quadspec;   /* quadrature tolerances and eta */
typedef struct tf_gridspec tf_gridspec;   /* oracle grid parameters */

/* Result of a momentum-flux / force integral. */
typedef struct tf_flux_result {
    double value;           /* flux or force per unit area, internal units */
    double error_estimate;  /* absolute quadrature error estimate */
    double eta_used;        /* imaginary energy shift actually applied */
    int resonances;         /* number of kernel poles handled */
} tf_flux_result;

TF_API const char* tf_version(void);
TF_API const char* tf_status_name(tf_status status);
TF_API const char* tf_last_error(void);

/* ---- materials -------------------------------------------------------- */

/* Requires fermi_energy > 0 and work_function >= 0 (internal units). */
TF_API tf_status tf_material_create(double fermi_energy, double work_function,
                                    tf_material** out);
TF_API void tf_material_destroy(tf_material* mat);

/* Any output pointer may be NULL. Derived values: k_fermi = sqrt(E_F),
 * kappa_fermi = sqrt(W), kappa_zero = sqrt(W + E_F), density = k_F^3/3pi^2. */
TF_API tf_status tf_material_get(const tf_material* mat,
                                 double* fermi_energy, double* work_function,
                                 double* k_fermi, double* kappa_fermi,
                                 double* kappa_zero, double* density);

/* ---- quadrature control ------------------------------------------------ */

/* Defaults: abs_tol 1e-10, rel_tol 1e-8, max_subdivisions 2000,
 * eta auto (1e-6 * E_F of the material in use), Richardson extrapolation
 * over eta and eta/2 enabled. A NULL tf_quadspec* argument anywhere below
 * means "defaults". */
TF_API tf_status tf_quadspec_create(tf_quadspec** out);
TF_API void tf_quadspec_destroy(tf_quadspec* spec);
TF_API tf_status tf_quadspec_set_tolerances(tf_quadspec* spec,
                                            double abs_tol, double rel_tol);
/* eta <= 0 restores the automatic choice. */
TF_API tf_status tf_quadspec_set_eta(tf_quadspec* spec, double eta,
                                     int extrapolate);
TF_API tf_status tf_quadspec_set_max_subdivisions(tf_quadspec* spec,
                                                  int max_subdivisions);

/* ---- forces and pressures --------------------------------------------- */

/* Degenerate-gas pressure, closed form 2nE_F/5 and the momentum-flux
 * integral with the surface reflection switched off; the two must agree. */
TF_API tf_status tf_fermi_pressure(const tf_material* mat,
                                   const tf_quadspec* spec,
                                   double* closed_form,
                                   tf_flux_result* numeric);

/* Closed-form contact force -(k_F^3/pi^2)(E_F/5 + W/3), always negative. */
TF_API tf_status tf_contact_force(const tf_material* mat,
                                  double* force_per_area);

/* Force per unit area between two semi-infinite conductors across a vacuum
 * gap. Both materials must share the same work function (common vacuum and
 * chemical potential); Fermi energies may differ. gap >= 0. */
TF_API tf_status tf_force_semiinfinite(const tf_material* mat1,
                                       const tf_material* mat2, double gap,
                                       const tf_quadspec* spec,
                                       tf_flux_result* out);

/* Force per unit area between two free-standing films of widths d1, d2. */
TF_API tf_status tf_force_thin_films(const tf_material* mat,
                                     double d1, double d2, double gap,
                                     const tf_quadspec* spec,
                                     tf_flux_result* out);

/* Smallest film width holding a longitudinal state below the chemical
 * potential: d_c = (2/k_F) atan(kappa_F/k_F). */
TF_API tf_status tf_critical_film_width(const tf_material* mat,
                                        double* width);

/* Surface energy from the force-distance integral. work_of_separation is
 * -Int F/A dL over the full separation range; per_surface is half of it. */
TF_API tf_status tf_surface_energy(const tf_material* mat,
                                   const tf_quadspec* spec,
                                   double* per_surface,
                                   double* work_of_separation,
                                   double* error_estimate);

/* Location and value of the |force| maximum over work function
 * W in (0, 20*E_F] at fixed gap. Fails if the maximum is not interior. */
TF_API tf_status tf_force_extremum_in_w(double gap, double fermi_energy,
                                        const tf_quadspec* spec,
                                        double* w_star, double* force_star);

/* ---- independent grid oracle ------------------------------------------ */

/* Defaults: spacing 0.01/k_F, padding 40/kappa_F (capped), proxy slab width
 * 30/k_F. Any value <= 0 keeps its default. */
TF_API tf_status tf_gridspec_create(tf_gridspec** out);
TF_API void tf_gridspec_destroy(tf_gridspec* grid);
TF_API tf_status tf_gridspec_set(tf_gridspec* grid, double spacing,
                                 double padding, double proxy_slab_width);

/* Force by numerical differentiation of the grand potential of the gridded
 * Schrodinger problem; shares no code with the reflection-amplitude route.
 * delta_l <= 0 selects the default step 1e-3/k_F. */
TF_API tf_status tf_oracle_force_semiinfinite(const tf_material* mat,
                                              double gap, double delta_l,
                                              const tf_gridspec* grid,
                                              double* force,
                                              double* error_estimate);
TF_API tf_status tf_oracle_force_films(const tf_material* mat,
                                       double d1, double d2, double gap,
                                       double delta_l,
                                       const tf_gridspec* grid,
                                       double* force,
                                       double* error_estimate);

#ifdef __cplusplus
}
#endif

#endif /* TUNNELFORCE_H */
