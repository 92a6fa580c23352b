#include "herald/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "herald/protocols.hpp"
#include "herald/sweep.hpp"
#include "herald/verify.hpp"

namespace herald {

namespace {

struct AngleFlags {
    std::optional<double> t;
    std::optional<double> theta;

    BSAngle resolve() const {
        if (t) return BSAngle::from_transmittance(*t);
        return BSAngle(*theta); // the option group guarantees one of the two
    }

    // For reports: echo the transmittance as typed rather than the cos^2 round
    // trip, which can land an ulp away.
    double display_t(const BSAngle& angle) const { return t ? *t : angle.transmittance(); }
};

// --T and --theta are mutually exclusive and exactly one is required.
void add_angle_flags(CLI::App* cmd, AngleFlags& flags) {
    auto* group = cmd->add_option_group("angle");
    group->add_option("--T", flags.t, "beam-splitter transmittance, in [0, 1]");
    group->add_option("--theta", flags.theta, "beam-splitter angle, in [0, pi/2]");
    group->require_option(1);
}

struct HeraldFlags {
    int m = 0;
    int n = 0;
    int m_prime = 0;
    int n_prime = 0;
    double theta_a = std::numbers::pi / 4;
};

void add_herald_flags(CLI::App* cmd, HeraldFlags& flags, bool with_premix) {
    cmd->add_option("--m", flags.m, "photons injected into the upper ancilla");
    cmd->add_option("--n", flags.n, "photons injected into the lower ancilla");
    cmd->add_option("--m-prime", flags.m_prime, "detected count on the upper ancilla");
    cmd->add_option("--n-prime", flags.n_prime, "detected count on the lower ancilla");
    if (with_premix)
        cmd->add_option("--theta-a", flags.theta_a, "ancilla premix angle (default pi/4)");
}

// The point commands mirror the sweep convention: the single grid angle is
// applied to every active rail, and a setup-1 rail with nothing injected,
// nothing detected stays untouched.
HeraldSpec make_spec(const HeraldFlags& flags, const BSAngle& angle, bool setup1_style) {
    HeraldSpec spec;
    spec.m = flags.m;
    spec.n = flags.n;
    spec.m_prime = flags.m_prime;
    spec.n_prime = flags.n_prime;
    spec.theta_a = flags.theta_a;
    if (setup1_style) {
        if (!spec.upper_noop()) spec.theta_u = angle.theta();
        if (!spec.lower_noop()) spec.theta_l = angle.theta();
    } else {
        spec.theta_u = angle.theta();
        spec.theta_l = angle.theta();
    }
    return spec;
}

Cutoff pick_cutoff(const std::optional<int>& override_k, double r) {
    return override_k ? Cutoff(*override_k) : Cutoff::for_squeezing(r);
}

// Mirrors the tail alarm that --allow-truncation downgraded, as a warning.
void warn_if_tail_unsafe(double r, Cutoff cutoff, bool allow_truncation, std::ostream& err) {
    if (!allow_truncation) return;
    const double l2 = std::pow(std::tanh(r), 2);
    const double tail = std::pow(l2, cutoff.k_max - kTailBand + 1) * (1.0 - std::pow(l2, kTailBand));
    if (tail >= kTailAlarm)
        err << "warning: source tail " << format_number(tail)
            << " at the cutoff exceeds the safe level; results carry truncation spill\n";
}

void print_outcome(const char* protocol, double r, double display_t, const BSAngle& angle,
                   const ProtocolOutcome& out, std::ostream& os) {
    os << "protocol: " << protocol << '\n'
       << "r: " << format_number(r) << '\n'
       << "T: " << format_number(display_t) << " (theta " << format_number(angle.theta()) << ")\n"
       << "success_prob: " << format_number(out.success_prob) << '\n';
    if (out.e_n) {
        os << "E_N: " << format_number(*out.e_n) << '\n'
           << "baseline_E_N: " << format_number(baseline_tmsvs(r)) << '\n'
           << "delta_E_N: " << format_number(*out.delta_e_n) << '\n';
    } else {
        os << "E_N: (branch annihilated)\n";
    }
    os << "spill: " << format_number(out.truncation_spill) << '\n';
}

void write_json_lines(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "{\"schema_version\":1}\n";
    for (const SweepRow& row : rows) {
        os << "{\"r\":" << format_number(row.r) << ",\"T\":" << format_number(row.t)
           << ",\"success_prob\":" << format_number(row.success_prob) << ",\"E_N\":"
           << (row.e_n ? format_number(*row.e_n) : "null") << ",\"delta_E_N\":"
           << (row.delta_e_n ? format_number(*row.delta_e_n) : "null") << ",\"spill\":"
           << format_number(row.spill) << "}\n";
    }
}

void write_rows(const std::vector<SweepRow>& rows, const std::string& format, std::ostream& os) {
    if (format == "json-lines") {
        write_json_lines(rows, os);
    } else {
        SweepTable table;
        table.rows = rows;
        write_table(table, os);
    }
}

// Emits through --out when given, otherwise to the CLI's output stream.
void emit(const std::vector<SweepRow>& rows, const std::string& format, const std::string& out_path,
          std::ostream& fallback) {
    if (out_path.empty()) {
        write_rows(rows, format, fallback);
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw Error("cannot open output file: " + out_path);
    write_rows(rows, format, file);
    file.flush();
    if (!file) throw Error("write failed: " + out_path);
}

Protocol parse_protocol(const std::string& name) {
    if (name == "setup1") return Protocol::setup1;
    if (name == "setup2") return Protocol::setup2;
    return Protocol::setup2_analytic;
}

// ---- subcommand handlers ----

struct TmsvsFlags {
    double r = 0.0;
    std::optional<int> cutoff;
    bool allow_truncation = false;
};

int do_tmsvs(const TmsvsFlags& flags, std::ostream& out, std::ostream& err) {
    const Cutoff cutoff = pick_cutoff(flags.cutoff, flags.r);
    warn_if_tail_unsafe(flags.r, cutoff, flags.allow_truncation, err);
    const TwoModeState st = tmsvs(SqueezeParam(flags.r), cutoff, flags.allow_truncation);
    // E_N is evaluated on the renormalized kept block so a permitted truncation
    // still yields a well-defined entanglement figure.
    const double e_n = log_negativity_pure(schmidt(normalize(st).first));

    out << "TMSVS r: " << format_number(flags.r) << '\n'
        << "cutoff k_max: " << cutoff.k_max << '\n'
        << "E_N: " << format_number(e_n) << '\n'
        << "baseline_E_N: " << format_number(baseline_tmsvs(flags.r)) << '\n'
        << "coefficients (k, amplitude, cumulative probability):\n";
    const int shown = std::min(cutoff.k_max, 15);
    double cumulative = 0.0;
    for (int k = 0; k <= shown; ++k) {
        const double w = st.coeff(k, k);
        cumulative += w * w;
        out << "  " << k << ' ' << format_number(w) << ' ' << format_number(cumulative) << '\n';
    }
    if (shown < cutoff.k_max)
        out << "  (rows " << shown + 1 << ".." << cutoff.k_max << " hold "
            << format_number(1.0 - st.spill() - cumulative) << " of probability)\n";
    return 0;
}

struct PointFlags {
    double r = 0.0;
    AngleFlags angle;
    HeraldFlags herald;
    std::optional<int> cutoff;
    bool allow_truncation = false;
    std::string fock_input; // setup1 diagnostic: "fock:<k>"
};

// Diagnostic mode: a bare Fock state |k> through the upper heralded BS instead
// of the squeezed source. Exercises the kill-zeros directly; an annihilated
// branch exits 4.
int do_setup1_fock_probe(const PointFlags& flags, const BSAngle& angle, std::ostream& out,
                         std::ostream& err) {
    if (flags.fock_input.rfind("fock:", 0) != 0)
        throw std::invalid_argument("--input expects fock:<k>");
    const std::string payload = flags.fock_input.substr(5);
    std::size_t used = 0;
    int k_in = -1;
    try {
        k_in = std::stoi(payload, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != payload.size() || k_in < 0)
        throw std::invalid_argument("--input expects fock:<k> with k >= 0");
    if (flags.herald.n != 0 || flags.herald.n_prime != 0)
        throw std::invalid_argument("--input fock:<k> drives the upper rail only; lower herald must stay 0");

    const double amp = bs_coefficient(flags.herald.m, flags.herald.m_prime, k_in, angle);
    const double success = amp * amp;
    out << "protocol: setup1 (Fock probe)\n"
        << "input: |" << k_in << ">\n"
        << "T: " << format_number(angle.transmittance()) << " (theta " << format_number(angle.theta())
        << ")\n"
        << "success_prob: " << format_number(success) << '\n';
    if (!(success > kZeroNormThreshold)) {
        out << "output: (branch annihilated)\n";
        err << "error: heralded branch annihilated for Fock input |" << k_in << ">\n";
        return 4;
    }
    out << "output: |" << k_in + flags.herald.m - flags.herald.m_prime << ">\n";
    return 0;
}

int do_point(bool setup1_style, const PointFlags& flags, std::ostream& out, std::ostream& err) {
    const BSAngle angle = flags.angle.resolve();
    if (!flags.fock_input.empty()) return do_setup1_fock_probe(flags, angle, out, err);

    const SqueezeParam sq(flags.r);
    const Cutoff cutoff = pick_cutoff(flags.cutoff, flags.r);
    warn_if_tail_unsafe(flags.r, cutoff, flags.allow_truncation, err);
    const HeraldSpec spec = make_spec(flags.herald, angle, setup1_style);
    const RunOptions opts{flags.allow_truncation, true};
    const ProtocolOutcome outcome =
        setup1_style ? run_setup1(sq, spec, cutoff, opts) : run_setup2(sq, spec, cutoff, opts);

    print_outcome(setup1_style ? "setup1" : "setup2", flags.r, flags.angle.display_t(angle), angle,
                  outcome, out);
    if (!outcome.state) {
        err << "error: heralded branch annihilated; no output state\n";
        return 4;
    }
    return 0;
}

struct PkFlags {
    double r = 0.0;
    AngleFlags angle;
    int k_limit = 40;
};

int do_pk(const PkFlags& flags, std::ostream& out) {
    const SqueezeParam sq(flags.r);
    const BSAngle angle = flags.angle.resolve();
    const std::vector<double> p = pk_distribution(sq, angle, flags.k_limit);
    const double x = sq.lambda() * angle.transmittance();

    out << "pair distribution: r " << format_number(flags.r) << ", T "
        << format_number(flags.angle.display_t(angle)) << '\n'
        << "x = lambda * T: " << format_number(x) << '\n'
        << "mode: " << pk_mode(sq, angle) << '\n'
        << "k p_k\n";
    for (int k = 0; k <= flags.k_limit; ++k)
        out << k << ' ' << format_number(p[k]) << '\n';
    return 0;
}

struct SweepFlags {
    std::string protocol = "setup1";
    HeraldFlags herald;
    SweepGrid grid;
    std::optional<int> cutoff;
    std::string format = "csv";
    std::string out_path;
    double p_min = 0.0;
};

void add_grid_flags(CLI::App* cmd, SweepGrid& grid, bool with_steps) {
    cmd->add_option("--r-min", grid.r_min, "squeezing lower bound");
    cmd->add_option("--r-max", grid.r_max, "squeezing upper bound");
    cmd->add_option("--t-min", grid.t_min, "transmittance lower bound");
    cmd->add_option("--t-max", grid.t_max, "transmittance upper bound");
    if (with_steps) {
        cmd->add_option("--r-steps", grid.r_steps, "grid points along r");
        cmd->add_option("--t-steps", grid.t_steps, "grid points along T");
    }
}

HeraldSpec sweep_spec(const HeraldFlags& flags) {
    HeraldSpec spec;
    spec.m = flags.m;
    spec.n = flags.n;
    spec.m_prime = flags.m_prime;
    spec.n_prime = flags.n_prime;
    spec.theta_a = flags.theta_a;
    return spec; // system angles are supplied per grid point by the sweep
}

int do_sweep(const SweepFlags& flags, std::ostream& out) {
    SweepOptions opts;
    opts.cutoff_override = flags.cutoff;
    const SweepTable table = sweep(parse_protocol(flags.protocol), sweep_spec(flags.herald), flags.grid, opts);
    emit(table.rows, flags.format, flags.out_path, out);
    return 0;
}

int do_optimize(const SweepFlags& flags, std::ostream& out) {
    SweepOptions opts;
    opts.cutoff_override = flags.cutoff;
    const OptimumReport report =
        optimize(parse_protocol(flags.protocol), sweep_spec(flags.herald), flags.grid, flags.p_min, opts);

    out << "optimize: " << flags.protocol << " (m " << flags.herald.m << ", n " << flags.herald.n
        << ", m' " << flags.herald.m_prime << ", n' " << flags.herald.n_prime << ")\n"
        << "p_min: " << format_number(report.p_min) << '\n'
        << "best_r: " << format_number(report.best_r) << '\n'
        << "best_T: " << format_number(report.best_t) << '\n'
        << "delta_E_N: " << format_number(report.delta_e_n) << '\n'
        << "success_prob: " << format_number(report.success_prob) << '\n'
        << "neighborhood (3x3 at the final refinement step):\n";
    emit(report.neighborhood, flags.format, flags.out_path, out);
    return 0;
}

int do_verify(std::ostream& out, std::ostream& err) {
    const std::vector<CheckResult> results = run_all_checks();
    int passed = 0;
    double total_seconds = 0.0;
    for (const CheckResult& res : results) {
        out << (res.passed ? "[PASS] " : "[FAIL] ") << res.name << ": " << res.detail << '\n';
        if (res.passed) ++passed;
        total_seconds += res.seconds;
        // Timings go to the error stream so the output bytes stay deterministic.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", res.seconds);
        err << "  " << res.name << " took " << buf << '\n';
    }
    out << "verify: " << passed << '/' << results.size() << " checks passed\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", total_seconds);
    err << "verify total: " << buf << '\n';
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"heralded non-Gaussian operations on a two-mode squeezed vacuum"};
    app.name("herald");
    app.require_subcommand(1);

    TmsvsFlags tmsvs_flags;
    CLI::App* cmd_tmsvs = app.add_subcommand("tmsvs", "squeezed source state and its log-negativity");
    cmd_tmsvs->add_option("--r", tmsvs_flags.r, "squeezing factor")->required();
    cmd_tmsvs->add_option("--cutoff", tmsvs_flags.cutoff, "Fock cutoff override");
    cmd_tmsvs->add_flag("--allow-truncation", tmsvs_flags.allow_truncation,
                        "downgrade the cutoff tail assertion to a warning");

    PointFlags s1_flags;
    CLI::App* cmd_s1 = app.add_subcommand("setup1", "independent heralded BS on each system mode");
    cmd_s1->add_option("--r", s1_flags.r, "squeezing factor")->required();
    add_angle_flags(cmd_s1, s1_flags.angle);
    add_herald_flags(cmd_s1, s1_flags.herald, false);
    cmd_s1->add_option("--cutoff", s1_flags.cutoff, "Fock cutoff override");
    cmd_s1->add_flag("--allow-truncation", s1_flags.allow_truncation,
                     "downgrade the cutoff tail assertion to a warning");
    cmd_s1->add_option("--input", s1_flags.fock_input,
                       "diagnostic: feed fock:<k> through the upper heralded BS instead of the source");

    PointFlags s2_flags;
    CLI::App* cmd_s2 = app.add_subcommand("setup2", "premixed-ancilla heralded circuit");
    cmd_s2->add_option("--r", s2_flags.r, "squeezing factor")->required();
    add_angle_flags(cmd_s2, s2_flags.angle);
    add_herald_flags(cmd_s2, s2_flags.herald, true);
    cmd_s2->add_option("--cutoff", s2_flags.cutoff, "Fock cutoff override");
    cmd_s2->add_flag("--allow-truncation", s2_flags.allow_truncation,
                     "downgrade the cutoff tail assertion to a warning");

    PkFlags pk_flags;
    CLI::App* cmd_pk = app.add_subcommand("pk", "entangled-pair distribution of the premixed addition");
    cmd_pk->add_option("--r", pk_flags.r, "squeezing factor")->required();
    add_angle_flags(cmd_pk, pk_flags.angle);
    cmd_pk->add_option("--k-limit", pk_flags.k_limit, "largest k to print (default 40)");

    SweepFlags sweep_flags;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "evaluate a protocol over an (r, T) grid");
    cmd_sweep->add_option("--protocol", sweep_flags.protocol, "protocol to sweep")
        ->check(CLI::IsMember({"setup1", "setup2", "setup2-analytic"}));
    add_herald_flags(cmd_sweep, sweep_flags.herald, true);
    add_grid_flags(cmd_sweep, sweep_flags.grid, true);
    cmd_sweep->add_option("--cutoff", sweep_flags.cutoff, "Fock cutoff override");
    cmd_sweep->add_option("--format", sweep_flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    cmd_sweep->add_option("--out", sweep_flags.out_path, "write the table to a file");

    SweepFlags opt_flags;
    CLI::App* cmd_opt = app.add_subcommand("optimize", "maximize delta E_N subject to a success floor");
    cmd_opt->add_option("--protocol", opt_flags.protocol, "protocol to optimize")
        ->check(CLI::IsMember({"setup1", "setup2", "setup2-analytic"}));
    add_herald_flags(cmd_opt, opt_flags.herald, true);
    add_grid_flags(cmd_opt, opt_flags.grid, false);
    cmd_opt->add_option("--p-min", opt_flags.p_min, "success probability floor (default 0)");
    cmd_opt->add_option("--cutoff", opt_flags.cutoff, "Fock cutoff override");
    cmd_opt->add_option("--format", opt_flags.format, "neighborhood table format")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    cmd_opt->add_option("--out", opt_flags.out_path, "write the neighborhood table to a file");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the full invariant check suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n'
            << "usage: herald {tmsvs|setup1|setup2|pk|sweep|optimize|verify} [flags]; "
               "see 'herald --help'\n";
        return 2;
    }

    try {
        if (cmd_tmsvs->parsed()) return do_tmsvs(tmsvs_flags, out, err);
        if (cmd_s1->parsed()) return do_point(true, s1_flags, out, err);
        if (cmd_s2->parsed()) return do_point(false, s2_flags, out, err);
        if (cmd_pk->parsed()) return do_pk(pk_flags, out);
        if (cmd_sweep->parsed()) return do_sweep(sweep_flags, out);
        if (cmd_opt->parsed()) return do_optimize(opt_flags, out);
        if (cmd_verify->parsed()) return do_verify(out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const TruncationUnsafeError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ConvergenceFailureError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ZeroStateError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const NoFeasiblePointError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace herald
