// Command-line front end for the tunnelforce shared library. Talks to the
// core exclusively through the C API in tunnelforce/tunnelforce.h.
//
// Lengths on the command line are dimensionless separations k_F*L (and film
// widths k_F*d); energies are internal units unless the eV options are used.
// Output is CSV with a '#'-prefixed config echo, or the equivalent JSON.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tunnelforce/tunnelforce.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitOracleMismatch = 4;

struct CliError {
    int code;
    std::string message;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns; // numeric columns; "status" is implicit
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;
};

void write_csv(std::ostream& os, const Table& t) {
    os << "# tunnelforce " << tf_version() << "\n";
    os << "# command: " << t.command << "\n";
    for (const auto& [k, v] : t.meta)
        os << "# " << k << ": " << v << "\n";
    os << "# units: internal (hbar = 2m = 1); F_normalized is F/A in units of 2*E_F*k_F^3\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << ",";
    os << "status\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        for (double v : t.rows[r])
            os << format_double(v) << ",";
        os << t.status[r] << "\n";
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["generator"] = std::string("tunnelforce ") + tf_version();
    j["command"] = t.command;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : t.meta)
        cfg[k] = v;
    j["config"] = cfg;
    j["units"] = "internal (hbar = 2m = 1); F_normalized is F/A in units of 2*E_F*k_F^3";
    j["columns"] = t.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < t.rows.size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (double v : t.rows[r]) {
            if (std::isfinite(v))
                row.push_back(v);
            else
                row.push_back(nullptr);
        }
        row.push_back(t.status[r]);
        rows.push_back(row);
    }
    j["rows"] = rows;
    os << j.dump(2) << "\n";
}

void emit(const Table& t, const std::string& out_path, const std::string& format) {
    std::ostringstream buf;
    if (format == "json")
        write_json(buf, t);
    else
        write_csv(buf, t);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw CliError{kExitConfig, "cannot open output file: " + out_path};
        f << buf.str();
    }
}

// Common options shared by every subcommand.
struct CommonOptions {
    double ef = 0.0;
    double ef_ev = 0.0;
    double w = -1.0;
    double wtilde = -1.0;
    double w_ev = -1.0;
    std::string units; // "ev:<scale>"
    double eta = 0.0;
    double tol = 0.0;
    std::string out_path;
    std::string format = "csv";
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool need_material) {
    if (need_material) {
        cmd->add_option("--ef", o.ef, "Fermi energy (internal units)");
        cmd->add_option("--ef-ev", o.ef_ev, "Fermi energy in eV (requires --units ev:<scale>)");
        cmd->add_option("--w", o.w, "work function (internal units)");
        cmd->add_option("--wtilde", o.wtilde, "dimensionless work function W/(2 E_F)");
        cmd->add_option("--w-ev", o.w_ev, "work function in eV (requires --units ev:<scale>)");
        cmd->add_option("--units", o.units, "unit system, e.g. ev:5 (one internal energy unit = 5 eV)");
    }
    cmd->add_option("--eta", o.eta, "imaginary energy shift (internal units; default 1e-6*E_F)");
    cmd->add_option("--tol", o.tol, "relative quadrature tolerance");
    cmd->add_option("--out", o.out_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", o.jobs, "parallel workers for sweep points")
        ->check(CLI::PositiveNumber);
}

double ev_scale(const CommonOptions& o) {
    if (o.units.empty())
        throw CliError{kExitConfig, "--ef-ev/--w-ev require --units ev:<scale>"};
    if (o.units.rfind("ev:", 0) != 0)
        throw CliError{kExitConfig, "unsupported unit system: " + o.units};
    const double scale = std::atof(o.units.c_str() + 3);
    if (!(scale > 0.0))
        throw CliError{kExitConfig, "invalid unit scale in: " + o.units};
    return scale;
}

struct MaterialConfig {
    double ef = 0.0;
    double w = 0.0;
};

MaterialConfig resolve_material(const CommonOptions& o) {
    MaterialConfig m;
    if (o.ef > 0.0 && o.ef_ev > 0.0)
        throw CliError{kExitConfig, "give only one of --ef / --ef-ev"};
    if (o.ef > 0.0)
        m.ef = o.ef;
    else if (o.ef_ev > 0.0)
        m.ef = o.ef_ev / ev_scale(o);
    else
        throw CliError{kExitConfig, "missing --ef (or --ef-ev with --units)"};

    int given = (o.w >= 0.0) + (o.wtilde >= 0.0) + (o.w_ev >= 0.0);
    if (given != 1)
        throw CliError{kExitConfig, "give exactly one of --w / --wtilde / --w-ev"};
    if (o.w >= 0.0)
        m.w = o.w;
    else if (o.wtilde >= 0.0)
        m.w = 2.0 * m.ef * o.wtilde;
    else
        m.w = o.w_ev / ev_scale(o);
    return m;
}

// RAII wrappers over the C handles.
struct Material {
    tf_material* h = nullptr;
    explicit Material(const MaterialConfig& c) {
        if (tf_material_create(c.ef, c.w, &h) != TF_OK)
            throw CliError{kExitConfig, std::string("bad material: ") + tf_last_error()};
    }
    ~Material() { tf_material_destroy(h); }
    Material(const Material&) = delete;
    Material& operator=(const Material&) = delete;
    double k_fermi() const {
        double kf = 0.0;
        tf_material_get(h, nullptr, nullptr, &kf, nullptr, nullptr, nullptr);
        return kf;
    }
};

struct QuadSpec {
    tf_quadspec* h = nullptr;
    explicit QuadSpec(const CommonOptions& o) {
        tf_quadspec_create(&h);
        if (o.tol > 0.0 && tf_quadspec_set_tolerances(h, o.tol * 1e-2, o.tol) != TF_OK)
            throw CliError{kExitConfig, std::string("bad --tol: ") + tf_last_error()};
        if (o.eta > 0.0)
            tf_quadspec_set_eta(h, o.eta, 1);
    }
    ~QuadSpec() { tf_quadspec_destroy(h); }
    QuadSpec(const QuadSpec&) = delete;
    QuadSpec& operator=(const QuadSpec&) = delete;
};

void echo_common(Table& t, const MaterialConfig& m, const CommonOptions& o) {
    t.meta.emplace_back("ef", format_double(m.ef));
    t.meta.emplace_back("w", format_double(m.w));
    if (o.eta > 0.0)
        t.meta.emplace_back("eta", format_double(o.eta));
    if (o.tol > 0.0)
        t.meta.emplace_back("tol", format_double(o.tol));
    t.meta.emplace_back("jobs", std::to_string(o.jobs));
}

// Runs fn(i) for i in [0, n) on `jobs` workers; results land by index.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            fn(i);
    };
    std::vector<std::thread> pool;
    const int nw = std::min(jobs, n);
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

std::vector<double> make_axis(double lo, double hi, int count, bool log_spacing) {
    if (!(count >= 2))
        throw CliError{kExitConfig, "sweep needs at least 2 points"};
    if (!(lo < hi))
        throw CliError{kExitConfig, "sweep range needs min < max"};
    if (log_spacing && !(lo > 0.0))
        throw CliError{kExitConfig, "log spacing needs a positive minimum"};
    std::vector<double> axis(count);
    for (int i = 0; i < count; ++i) {
        const double f = double(i) / (count - 1);
        axis[i] = log_spacing ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return axis;
}

int sweep_exit_code(const Table& t) {
    for (const auto& s : t.status)
        if (s != "ok")
            return kExitConvergence;
    return 0;
}

// ---- subcommands -------------------------------------------------------

int run_pressure(const CommonOptions& o) {
    const MaterialConfig mc = resolve_material(o);
    Material mat(mc);
    QuadSpec spec(o);

    double closed = 0.0;
    tf_flux_result numeric{};
    const tf_status st = tf_fermi_pressure(mat.h, spec.h, &closed, &numeric);
    if (st != TF_OK) {
        std::cerr << "pressure failed: " << tf_last_error() << "\n";
        return st == TF_ERROR_DOMAIN ? kExitConfig : kExitConvergence;
    }
    const double rel = std::abs(numeric.value - closed) / closed;

    Table t;
    t.command = "pressure";
    echo_common(t, mc, o);
    t.columns = {"E_F", "W", "p_closed", "p_numeric", "rel_diff"};
    t.rows.push_back({mc.ef, mc.w, closed, numeric.value, rel});
    t.status.push_back("ok");
    emit(t, o.out_path, o.format);
    return 0;
}

int run_force_sweep(const CommonOptions& o, double lmin, double lmax, int ln,
                    bool log_spacing) {
    const MaterialConfig mc = resolve_material(o);
    Material mat(mc);
    QuadSpec spec(o);
    const double kf = mat.k_fermi();
    const std::vector<double> axis = make_axis(lmin, lmax, ln, log_spacing);

    Table t;
    t.command = "force-sweep";
    echo_common(t, mc, o);
    t.meta.emplace_back("lmin", format_double(lmin));
    t.meta.emplace_back("lmax", format_double(lmax));
    t.meta.emplace_back("ln", std::to_string(ln));
    t.meta.emplace_back("spacing", log_spacing ? "log" : "linear");
    t.columns = {"kF_L", "F_over_A", "F_normalized", "abs_error", "eta_used"};
    t.rows.assign(axis.size(), {});
    t.status.assign(axis.size(), "ok");

    const double norm = 2.0 * mc.ef * kf * kf * kf;
    parallel_for(static_cast<int>(axis.size()), o.jobs, [&](int i) {
        tf_flux_result r{};
        const tf_status st =
            tf_force_semiinfinite(mat.h, mat.h, axis[i] / kf, spec.h, &r);
        if (st != TF_OK) {
            t.rows[i] = {axis[i], NAN, NAN, NAN, NAN};
            t.status[i] = tf_status_name(st);
            return;
        }
        t.rows[i] = {axis[i], r.value, r.value / norm, r.error_estimate, r.eta_used};
    });
    emit(t, o.out_path, o.format);
    return sweep_exit_code(t);
}

int run_wf_sweep(const CommonOptions& o, double l, double wmin, double wmax,
                 int wn, bool log_spacing, bool wtilde_range) {
    if (o.w >= 0.0 || o.wtilde >= 0.0 || o.w_ev >= 0.0)
        throw CliError{kExitConfig, "wf-sweep scans W; do not pass --w/--wtilde"};
    CommonOptions om = o;
    om.w = 0.0; // satisfied below per point
    const double ef = [&] {
        CommonOptions probe = om;
        return resolve_material(probe).ef;
    }();
    QuadSpec spec(o);
    const double kf = std::sqrt(ef);
    std::vector<double> axis = make_axis(wmin, wmax, wn, log_spacing);
    if (wtilde_range)
        for (double& w : axis)
            w *= 2.0 * ef;

    Table t;
    t.command = "wf-sweep";
    t.meta.emplace_back("ef", format_double(ef));
    t.meta.emplace_back("kF_L", format_double(l));
    t.meta.emplace_back("wmin", format_double(wmin));
    t.meta.emplace_back("wmax", format_double(wmax));
    t.meta.emplace_back("wn", std::to_string(wn));
    t.meta.emplace_back("sweep_axis", wtilde_range ? "wtilde" : "w");
    t.meta.emplace_back("jobs", std::to_string(o.jobs));
    t.columns = {"W", "W_tilde", "F_over_A", "F_normalized", "abs_error", "eta_used"};
    t.rows.assign(axis.size(), {});
    t.status.assign(axis.size(), "ok");

    const double norm = 2.0 * ef * kf * kf * kf;
    parallel_for(static_cast<int>(axis.size()), o.jobs, [&](int i) {
        tf_material* m = nullptr;
        if (tf_material_create(ef, axis[i], &m) != TF_OK) {
            t.rows[i] = {axis[i], axis[i] / (2.0 * ef), NAN, NAN, NAN, NAN};
            t.status[i] = "domain error";
            return;
        }
        tf_flux_result r{};
        const tf_status st = tf_force_semiinfinite(m, m, l / kf, spec.h, &r);
        tf_material_destroy(m);
        if (st != TF_OK) {
            t.rows[i] = {axis[i], axis[i] / (2.0 * ef), NAN, NAN, NAN, NAN};
            t.status[i] = tf_status_name(st);
            return;
        }
        t.rows[i] = {axis[i], axis[i] / (2.0 * ef), r.value, r.value / norm,
                     r.error_estimate, r.eta_used};
    });
    emit(t, o.out_path, o.format);
    return sweep_exit_code(t);
}

int run_film_sweep(const CommonOptions& o, const std::vector<double>& widths,
                   double lmin, double lmax, int ln, bool log_spacing) {
    const MaterialConfig mc = resolve_material(o);
    Material mat(mc);
    QuadSpec spec(o);
    const double kf = mat.k_fermi();
    if (widths.empty())
        throw CliError{kExitConfig, "film-sweep needs at least one --d"};
    const std::vector<double> axis = make_axis(lmin, lmax, ln, log_spacing);

    Table t;
    t.command = "film-sweep";
    echo_common(t, mc, o);
    {
        std::ostringstream ds;
        for (size_t i = 0; i < widths.size(); ++i)
            ds << (i ? "," : "") << format_double(widths[i]);
        t.meta.emplace_back("d", ds.str());
    }
    t.meta.emplace_back("lmin", format_double(lmin));
    t.meta.emplace_back("lmax", format_double(lmax));
    t.meta.emplace_back("ln", std::to_string(ln));
    t.columns = {"kF_d", "kF_L", "F_over_A", "F_normalized", "abs_error",
                 "eta_used", "resonances"};
    const int total = static_cast<int>(widths.size() * axis.size());
    t.rows.assign(total, {});
    t.status.assign(total, "ok");

    const double norm = 2.0 * mc.ef * kf * kf * kf;
    parallel_for(total, o.jobs, [&](int idx) {
        const double d = widths[idx / axis.size()];
        const double l = axis[idx % axis.size()];
        tf_flux_result r{};
        const tf_status st = tf_force_thin_films(mat.h, d / kf, d / kf, l / kf,
                                                 spec.h, &r);
        if (st != TF_OK) {
            t.rows[idx] = {d, l, NAN, NAN, NAN, NAN, NAN};
            t.status[idx] = tf_status_name(st);
            return;
        }
        t.rows[idx] = {d, l, r.value, r.value / norm, r.error_estimate,
                       r.eta_used, double(r.resonances)};
    });
    emit(t, o.out_path, o.format);
    return sweep_exit_code(t);
}

int run_surface_energy(const CommonOptions& o) {
    const MaterialConfig mc = resolve_material(o);
    Material mat(mc);
    QuadSpec spec(o);

    double per_surface = 0.0, work = 0.0, err = 0.0;
    const tf_status st =
        tf_surface_energy(mat.h, spec.h, &per_surface, &work, &err);
    if (st != TF_OK) {
        std::cerr << "surface-energy failed: " << tf_last_error() << "\n";
        return st == TF_ERROR_DOMAIN ? kExitConfig : kExitConvergence;
    }

    Table t;
    t.command = "surface-energy";
    echo_common(t, mc, o);
    t.columns = {"E_F", "W", "sigma_per_surface", "work_of_separation", "abs_error"};
    t.rows.push_back({mc.ef, mc.w, per_surface, work, err});
    t.status.push_back("ok");
    emit(t, o.out_path, o.format);
    return 0;
}

int run_oracle_compare(const CommonOptions& o, double threshold) {
    // Default matrix: wide slabs standing in for semi-infinite bodies plus
    // genuinely thin films, same geometry on both routes.
    struct Case {
        double ef, w, d, l; // d, l in units of 1/k_F
    };
    const std::vector<Case> cases = {
        {1.0, 1.0, 30.0, 0.5}, {1.0, 0.4, 30.0, 0.3}, {1.0, 3.0, 30.0, 0.3},
        {1.0, 1.0, 2.0, 0.3},  {1.0, 1.0, 8.0, 0.5},
    };

    Table t;
    t.command = "oracle-compare";
    t.meta.emplace_back("threshold", format_double(threshold));
    t.meta.emplace_back("jobs", std::to_string(o.jobs));
    t.columns = {"case", "E_F", "W", "kF_d", "kF_L", "F_lifshitz", "F_oracle",
                 "oracle_error", "rel_dev"};
    t.rows.assign(cases.size(), {});
    t.status.assign(cases.size(), "ok");
    QuadSpec spec(o);

    parallel_for(static_cast<int>(cases.size()), o.jobs, [&](int i) {
        const Case& c = cases[i];
        tf_material* m = nullptr;
        if (tf_material_create(c.ef, c.w, &m) != TF_OK) {
            t.rows[i] = {double(i), c.ef, c.w, c.d, c.l, NAN, NAN, NAN, NAN};
            t.status[i] = "domain error";
            return;
        }
        double kf = 0.0;
        tf_material_get(m, nullptr, nullptr, &kf, nullptr, nullptr, nullptr);
        tf_flux_result lif{};
        tf_status st = tf_force_thin_films(m, c.d / kf, c.d / kf, c.l / kf,
                                           spec.h, &lif);
        double oracle = 0.0, oerr = 0.0;
        if (st == TF_OK)
            st = tf_oracle_force_films(m, c.d / kf, c.d / kf, c.l / kf, 0.0,
                                       nullptr, &oracle, &oerr);
        tf_material_destroy(m);
        if (st != TF_OK) {
            t.rows[i] = {double(i), c.ef, c.w, c.d, c.l, NAN, NAN, NAN, NAN};
            t.status[i] = tf_status_name(st);
            return;
        }
        const double rel = std::abs(lif.value - oracle) /
                           std::max(std::abs(oracle), 1e-300);
        t.rows[i] = {double(i), c.ef, c.w, c.d, c.l, lif.value, oracle, oerr, rel};
    });

    emit(t, o.out_path, o.format);
    double max_rel = 0.0;
    bool failed = false;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        if (t.status[i] != "ok")
            failed = true;
        else
            max_rel = std::max(max_rel, t.rows[i].back());
    }
    std::cerr << "oracle-compare: max relative deviation " << format_double(max_rel)
              << " (threshold " << format_double(threshold) << ")\n";
    if (failed)
        return kExitConvergence;
    return max_rel > threshold ? kExitOracleMismatch : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tunneling-induced forces between conductors"};
    app.require_subcommand(1);

    CommonOptions o_pressure, o_force, o_wf, o_film, o_sigma, o_oracle;

    CLI::App* cmd_pressure = app.add_subcommand("pressure", "bulk electron pressure, closed form vs flux integral");
    add_common(cmd_pressure, o_pressure, true);

    CLI::App* cmd_force = app.add_subcommand("force-sweep", "force vs separation for two semi-infinite conductors");
    add_common(cmd_force, o_force, true);
    double f_lmin = 0.0, f_lmax = 1.0;
    int f_ln = 0;
    bool f_log = false;
    cmd_force->add_option("--lmin", f_lmin, "smallest k_F*L")->required();
    cmd_force->add_option("--lmax", f_lmax, "largest k_F*L")->required();
    cmd_force->add_option("--ln", f_ln, "number of separations")->required();
    cmd_force->add_flag("--log", f_log, "logarithmic spacing");

    CLI::App* cmd_wf = app.add_subcommand("wf-sweep", "force vs work function at fixed separation");
    add_common(cmd_wf, o_wf, true);
    double wf_l = 0.0, wf_wmin = 0.0, wf_wmax = 0.0;
    int wf_wn = 0;
    bool wf_log = false, wf_tilde = false;
    cmd_wf->add_option("--l", wf_l, "separation k_F*L")->required();
    cmd_wf->add_option("--wmin", wf_wmin, "smallest W")->required();
    cmd_wf->add_option("--wmax", wf_wmax, "largest W")->required();
    cmd_wf->add_option("--wn", wf_wn, "number of work functions")->required();
    cmd_wf->add_flag("--log", wf_log, "logarithmic spacing");
    cmd_wf->add_flag("--wtilde-axis", wf_tilde, "interpret the range as W/(2 E_F)");

    CLI::App* cmd_film = app.add_subcommand("film-sweep", "force vs separation for free-standing film pairs");
    add_common(cmd_film, o_film, true);
    std::vector<double> film_d;
    double fl_lmin = 0.0, fl_lmax = 0.0;
    int fl_ln = 0;
    bool fl_log = false;
    cmd_film->add_option("--d", film_d, "film width k_F*d (repeatable)")->required();
    cmd_film->add_option("--lmin", fl_lmin, "smallest k_F*L")->required();
    cmd_film->add_option("--lmax", fl_lmax, "largest k_F*L")->required();
    cmd_film->add_option("--ln", fl_ln, "number of separations")->required();
    cmd_film->add_flag("--log", fl_log, "logarithmic spacing");

    CLI::App* cmd_sigma = app.add_subcommand("surface-energy", "surface energy from the force-distance integral");
    add_common(cmd_sigma, o_sigma, true);

    CLI::App* cmd_oracle = app.add_subcommand("oracle-compare", "Lifshitz route vs grid oracle on the default matrix");
    add_common(cmd_oracle, o_oracle, false);
    double oracle_threshold = 1e-3;
    cmd_oracle->add_option("--threshold", oracle_threshold, "relative deviation gate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (cmd_pressure->parsed())
            return run_pressure(o_pressure);
        if (cmd_force->parsed())
            return run_force_sweep(o_force, f_lmin, f_lmax, f_ln, f_log);
        if (cmd_wf->parsed())
            return run_wf_sweep(o_wf, wf_l, wf_wmin, wf_wmax, wf_wn, wf_log, wf_tilde);
        if (cmd_film->parsed())
            return run_film_sweep(o_film, film_d, fl_lmin, fl_lmax, fl_ln, fl_log);
        if (cmd_sigma->parsed())
            return run_surface_energy(o_sigma);
        if (cmd_oracle->parsed())
            return run_oracle_compare(o_oracle, oracle_threshold);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    }
    return kExitConfig;
}
