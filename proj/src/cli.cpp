#include "emfwd/cli.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "emfwd/constants.hpp"
#include "emfwd/csvio.hpp"
#include "emfwd/forward.hpp"
#include "emfwd/svgplot.hpp"

namespace emfwd::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Shared {
    std::string scenario_path;
    std::string out_path;
    std::string mode = "integrated";
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int parallel = 1;
};

QuadratureSettings settings_of(const Shared& sh) {
    QuadratureSettings qs;
    qs.rel_tol = sh.rel_tol;
    qs.abs_tol = sh.abs_tol;
    return qs;
}

SensorMode mode_of(const Shared& sh) {
    if (sh.mode == "integrated") return SensorMode::Integrated;
    if (sh.mode == "dipole") return SensorMode::Dipole;
    throw CLI::ValidationError("--mode must be 'integrated' or 'dipole'");
}

// loads + validates; returns false (and prints violations) when invalid
bool load_and_validate(const Shared& sh, Scenario& s) {
    s = load_scenario(sh.scenario_path);
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
        return false;
    }
    return true;
}

std::vector<std::string> standard_comments(const Shared& sh, const Scenario& s,
                                           const std::string& command) {
    return {std::string("emfwd ") + kVersion + " " + command,
            "scenario-hash: " + fnv1a_hex(scenario_to_json(s)),
            "rel-tol: " + format_double(sh.rel_tol) + " abs-tol: " + format_double(sh.abs_tol)};
}

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

void append_record_fields(std::vector<std::string>& row, const SweepEntry& e) {
    const VoltageRecord& r = e.record;
    row.push_back(format_double(r.value.real()));
    row.push_back(format_double(r.value.imag()));
    row.push_back(format_double(r.value_over_omega.real()));
    row.push_back(format_double(r.value_over_omega.imag()));
    row.push_back(format_double(r.diagnostics.nu));
    row.push_back(format_double(r.diagnostics.epsilon));
    row.push_back(csv_safe(e.status));
}

int finish_sweep_exit(const std::vector<SweepEntry>& entries) {
    for (const auto& e : entries)
        if (e.status != "ok") return kExitNumerical;
    return kExitOk;
}

std::vector<VoltageVariant> parse_variants(const std::string& csv) {
    std::vector<VoltageVariant> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto v = variant_from_name(tok);
        if (!v) throw CLI::ValidationError("unknown variant '" + tok + "' (use Vs,Vs0,Vfs,V0)");
        out.push_back(*v);
    }
    if (out.empty()) throw CLI::ValidationError("--variants is empty");
    return out;
}

int cmd_validate(const Shared& sh) {
    Scenario s;
    if (!load_and_validate(sh, s)) return kExitValidation;
    std::cout << "scenario ok\n";
    return kExitOk;
}

int cmd_sweep_frequency(const Shared& sh, const std::string& variants_csv,
                        const std::string& plot_path, const std::string& dat_path) {
    Scenario s;
    if (!load_and_validate(sh, s)) return kExitValidation;
    const auto variants = parse_variants(variants_csv);
    const auto entries = sweep(s, variants, mode_of(sh), settings_of(sh), sh.parallel);

    CsvTable t;
    t.comments = standard_comments(sh, s, "sweep-frequency");
    t.columns = {"omega", "variant", "ReV",     "ImV",   "ReV_over_omega",
                 "ImV_over_omega", "nu",      "epsilon", "status"};
    for (const auto& e : entries) {
        std::vector<std::string> row{format_double(e.omega), variant_name(e.variant)};
        append_record_fields(row, e);
        t.rows.push_back(row);
    }
    write_csv(t, sh.out_path);

    if (!plot_path.empty()) {
        PlotSpec ps;
        ps.x_column = "omega";
        ps.y_column = "ReV_over_omega";
        ps.log_x = true;
        ps.title = "frequency sweep";
        emit_plot(sh.out_path, ps, plot_path);
    }
    if (!dat_path.empty()) {
        PlotSpec ps;
        ps.x_column = "omega";
        ps.y_column = "ReV_over_omega";
        emit_dat(sh.out_path, ps, dat_path);
    }
    return finish_sweep_exit(entries);
}

int cmd_sweep_param(const Shared& sh, const std::string& param_name,
                    const std::vector<double>& values, const std::string& variants_csv) {
    Scenario s;
    if (!load_and_validate(sh, s)) return kExitValidation;
    const auto variants = parse_variants(variants_csv);

    CsvTable t;
    t.comments = standard_comments(sh, s, "sweep-" + param_name);
    t.columns = {param_name,        "omega", "variant", "ReV",    "ImV",
                 "ReV_over_omega", "ImV_over_omega",    "nu",     "epsilon", "status"};
    int exit_code = kExitOk;
    for (double v : values) {
        Scenario sv = s;
        if (param_name == "depth")
            sv.object.position.z = -v;
        else
            sv.object.alpha = v;
        const auto violations = validate_scenario(sv);
        if (!violations.empty()) {
            for (const auto& msg : violations) std::cerr << "violation: " << msg << "\n";
            return kExitValidation;
        }
        const auto entries = sweep(sv, variants, mode_of(sh), settings_of(sh), sh.parallel);
        for (const auto& e : entries) {
            std::vector<std::string> row{format_double(v), format_double(e.omega),
                                         variant_name(e.variant)};
            append_record_fields(row, e);
            t.rows.push_back(row);
        }
        if (finish_sweep_exit(entries) != kExitOk) exit_code = kExitNumerical;
    }
    write_csv(t, sh.out_path);
    return exit_code;
}

int cmd_soil_response(const Shared& sh, const std::vector<double>& sigmas,
                      const std::vector<double>& murs) {
    Scenario s;
    if (!load_and_validate(sh, s)) return kExitValidation;
    std::vector<double> sig = sigmas.empty() ? std::vector<double>{s.soil.sigma_s} : sigmas;
    std::vector<double> mur = murs.empty() ? std::vector<double>{s.soil.mu_rs} : murs;

    CsvTable t;
    t.comments = standard_comments(sh, s, "soil-response");
    t.columns = {"omega", "sigma_s", "mu_rs", "ReV0", "ImV0", "ReV0_over_omega",
                 "ImV0_over_omega", "epsilon", "status"};
    int exit_code = kExitOk;
    for (double sg : sig) {
        for (double mu : mur) {
            Scenario sv = s;
            sv.soil.sigma_s = sg;
            sv.soil.mu_rs = mu;
            if (sv.object.sigma_star <= sg) sv.object.sigma_star = 1e6 + sg;  // object ignored here
            const auto entries =
                sweep(sv, {VoltageVariant::V0SoilOnly}, mode_of(sh), settings_of(sh), sh.parallel);
            for (const auto& e : entries) {
                std::vector<std::string> row{format_double(e.omega), format_double(sg),
                                             format_double(mu)};
                const VoltageRecord& r = e.record;
                row.push_back(format_double(r.value.real()));
                row.push_back(format_double(r.value.imag()));
                row.push_back(format_double(r.value_over_omega.real()));
                row.push_back(format_double(r.value_over_omega.imag()));
                row.push_back(format_double(r.diagnostics.epsilon));
                row.push_back(csv_safe(e.status));
                t.rows.push_back(row);
            }
            if (finish_sweep_exit(entries) != kExitOk) exit_code = kExitNumerical;
        }
    }
    write_csv(t, sh.out_path);
    return exit_code;
}

int cmd_mpt_sphere(const Shared& sh, double alpha, double sigma, double mur, double omin,
                   double omax, int n) {
    if (!(alpha > 0 && sigma > 0 && mur >= 1 && omin > 0 && omax > omin && n >= 2))
        throw CLI::ValidationError("mpt-sphere: invalid parameter combination");
    MptSignature sig;
    sig.provenance = "sphere-analytic alpha=" + format_double(alpha) +
                     " sigma=" + format_double(sigma) + " mur=" + format_double(mur);
    const double step = std::log(omax / omin) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double omega = omin * std::exp(step * i);
        sig.entries.push_back(sphere_mpt(alpha, sigma, mur, omega));
    }
    save_signature(sig, sh.out_path);
    return kExitOk;
}

int cmd_rate_study(const Shared& sh, const std::vector<double>& alphas, const std::string& hold) {
    Scenario s;
    if (!load_and_validate(sh, s)) return kExitValidation;
    RateHold h;
    if (hold == "fixed_nu")
        h = RateHold::FixedNu;
    else if (hold == "fixed_omega")
        h = RateHold::FixedOmega;
    else
        throw CLI::ValidationError("--hold must be 'fixed_nu' or 'fixed_omega'");

    RateStudyResult res;
    try {
        res = scaling_rate_study(s, alphas, h, mode_of(sh), settings_of(sh));
    } catch (const std::invalid_argument& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return kExitValidation;
    }
    std::cout << "slope " << format_double(res.slope) << " rms-residual "
              << format_double(res.rms_residual) << "\n";
    if (!sh.out_path.empty()) {
        CsvTable t;
        t.comments = standard_comments(sh, s, "rate-study hold=" + hold);
        t.comments.push_back("slope: " + format_double(res.slope) +
                             " rms-residual: " + format_double(res.rms_residual));
        t.columns = {"alpha", "omega", "absV"};
        for (const auto& p : res.points)
            t.rows.push_back({format_double(p.alpha), format_double(p.omega),
                              format_double(p.abs_v)});
        write_csv(t, sh.out_path);
    }
    return kExitOk;
}

int cmd_plot(const std::string& csv, const PlotSpec& spec, const std::string& out,
             const std::string& dat) {
    emit_plot(csv, spec, out);
    if (!dat.empty()) emit_dat(csv, spec, dat);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"forward models for metal-detector voltages over conducting soil"};
    app.require_subcommand(1);

    Shared sh;
    std::string variants = "Vs";
    std::string plot_path, dat_path, hold = "fixed_nu";
    std::vector<double> values, sigmas, murs, alphas;
    double alpha = 0.1, sigma = 1e6, mur = 1.0, omin = 1e3, omax = 1e6;
    int n = 40;
    PlotSpec pspec;
    std::string plot_csv, plot_out, plot_dat;

    const auto add_shared = [&](CLI::App* c, bool needs_scenario = true, bool needs_out = true) {
        if (needs_scenario)
            c->add_option("--scenario", sh.scenario_path, "scenario JSON")->required();
        if (needs_out) c->add_option("--out", sh.out_path, "output path")->required();
        c->add_option("--mode", sh.mode, "sensor model: integrated|dipole");
        c->add_option("--rel-tol", sh.rel_tol, "quadrature relative tolerance");
        c->add_option("--abs-tol", sh.abs_tol, "quadrature absolute floor");
        c->add_option("--parallel", sh.parallel, "worker count (output is schedule-independent)");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a scenario against its invariants");
    validate->add_option("--scenario", sh.scenario_path)->required();

    CLI::App* sweepf = app.add_subcommand("sweep-frequency", "voltage sweep over the frequency grid");
    add_shared(sweepf);
    sweepf->add_option("--variants", variants, "comma list of Vs,Vs0,Vfs,V0");
    sweepf->add_option("--plot", plot_path, "also emit an SVG of ReV_over_omega vs omega");
    sweepf->add_option("--dat", dat_path, "also emit a gnuplot-style .dat");

    CLI::App* sweepd = app.add_subcommand("sweep-depth", "repeat the frequency sweep per burial depth");
    add_shared(sweepd);
    sweepd->add_option("--depths", values, "positive depths in m")->required()->delimiter(',');
    sweepd->add_option("--variants", variants);

    CLI::App* sweeps = app.add_subcommand("sweep-size", "repeat the frequency sweep per object size");
    add_shared(sweeps);
    sweeps->add_option("--alphas", values, "object radii in m")->required()->delimiter(',');
    sweeps->add_option("--variants", variants);

    CLI::App* soil = app.add_subcommand("soil-response", "object-free soil voltage over a parameter grid");
    add_shared(soil);
    soil->add_option("--sigmas", sigmas, "soil conductivities, S/m")->delimiter(',');
    soil->add_option("--murs", murs, "soil relative permeabilities")->delimiter(',');

    CLI::App* mpts = app.add_subcommand("mpt-sphere", "generate an analytic sphere MPT signature file");
    mpts->add_option("--alpha", alpha)->required();
    mpts->add_option("--sigma", sigma)->required();
    mpts->add_option("--mur", mur);
    mpts->add_option("--omin", omin)->required();
    mpts->add_option("--omax", omax)->required();
    mpts->add_option("--n", n);
    mpts->add_option("--out", sh.out_path)->required();

    CLI::App* rate = app.add_subcommand("rate-study", "size-scaling slope of |dV_s|");
    rate->add_option("--scenario", sh.scenario_path)->required();
    rate->add_option("--alphas", alphas, "object radii in m")->required()->delimiter(',');
    rate->add_option("--hold", hold, "fixed_nu|fixed_omega");
    rate->add_option("--mode", sh.mode);
    rate->add_option("--rel-tol", sh.rel_tol);
    rate->add_option("--abs-tol", sh.abs_tol);
    rate->add_option("--out", sh.out_path, "optional per-size CSV");

    CLI::App* plot = app.add_subcommand("plot", "render a CSV into a standalone SVG");
    plot->add_option("--csv", plot_csv)->required();
    plot->add_option("--x", pspec.x_column)->required();
    plot->add_option("--y", pspec.y_column)->required();
    plot->add_flag("--logx", pspec.log_x);
    plot->add_flag("--logy", pspec.log_y);
    plot->add_option("--group", pspec.group_column, "series-splitting column (default 'variant')");
    plot->add_option("--title", pspec.title);
    plot->add_option("--out", plot_out)->required();
    plot->add_option("--dat", plot_dat, "also emit a gnuplot-style .dat");

    std::vector<const char*> argv;
    argv.push_back("emfwd");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(sh);
        if (sweepf->parsed()) return cmd_sweep_frequency(sh, variants, plot_path, dat_path);
        if (sweepd->parsed()) return cmd_sweep_param(sh, "depth", values, variants);
        if (sweeps->parsed()) return cmd_sweep_param(sh, "alpha", values, variants);
        if (soil->parsed()) return cmd_soil_response(sh, sigmas, murs);
        if (mpts->parsed()) return cmd_mpt_sphere(sh, alpha, sigma, mur, omin, omax, n);
        if (rate->parsed()) return cmd_rate_study(sh, alphas, hold);
        if (plot->parsed()) return cmd_plot(plot_csv, pspec, plot_out, plot_dat);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace emfwd::cli
