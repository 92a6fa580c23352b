#include "herald/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "herald/cli.hpp"
#include "herald/entanglement.hpp"
#include "herald/oracles.hpp"
#include "herald/protocols.hpp"
#include "herald/sweep.hpp"

namespace herald {

namespace {

struct Failure {
    std::string detail;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

TwoModeState random_normalized_state(int k_max, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Cutoff cut(k_max);
    Eigen::MatrixXd c(cut.dim(), cut.dim());
    for (int j = 0; j < c.rows(); ++j)
        for (int k = 0; k < c.cols(); ++k) c(j, k) = gauss(rng);
    c /= c.norm();
    TwoModeState st = TwoModeState::from_matrix(cut, std::move(c));
    st.set_normalized_flag(true);
    return st;
}

SchmidtSpectrum random_spectrum(int d, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    std::vector<double> v(d);
    double n2 = 0;
    for (double& x : v) {
        x = std::abs(gauss(rng)) + 1e-3;
        n2 += x * x;
    }
    for (double& x : v) x /= std::sqrt(n2);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return {v, 0.0};
}

double state_overlap(const TwoModeState& a, const TwoModeState& b) {
    return std::abs((a.coeffs().array() * b.coeffs().array()).sum());
}

// ---- fock ----

std::string check_norm_preservation() {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    FourModeState st(Cutoff(8), 2);
    for (double& v : st.data()) v = gauss(rng);
    double n2 = norm_squared(st);
    for (double& v : st.data()) v /= std::sqrt(n2);

    const std::pair<std::pair<FourMode, FourMode>, double> steps[] = {
        {{FourMode::LA, FourMode::UA}, std::numbers::pi / 4},
        {{FourMode::U, FourMode::UA}, 0.43},
        {{FourMode::L, FourMode::LA}, 0.91},
        {{FourMode::U, FourMode::LA}, 1.2},
    };
    double max_dev = 0;
    for (const auto& [pair, theta] : steps) {
        FourModeState next = apply_full_bs(st, pair.first, pair.second, BSAngle(theta));
        const double dev = std::abs(norm_squared(next) + (next.spill() - st.spill()) - norm_squared(st));
        max_dev = std::max(max_dev, dev);
        st = std::move(next);
    }
    expect(max_dev <= 1e-12, "norm drift " + fmt(max_dev));
    return "max norm drift " + fmt(max_dev);
}

std::string check_schmidt_basics() {
    std::mt19937 rng(11);
    double max_norm_dev = 0, max_transpose_dev = 0;
    for (int trial = 0; trial < 5; ++trial) {
        TwoModeState st = random_normalized_state(12, rng);
        const SchmidtSpectrum spec = schmidt(st);
        double sum2 = 0;
        for (double v : spec.values) sum2 += v * v;
        max_norm_dev = std::max(max_norm_dev, std::abs(sum2 - 1.0));

        TwoModeState tr = TwoModeState::from_matrix(st.cutoff(), st.coeffs().transpose());
        const SchmidtSpectrum spec_t = schmidt(tr);
        for (std::size_t i = 0; i < spec.values.size(); ++i)
            max_transpose_dev = std::max(max_transpose_dev, std::abs(spec.values[i] - spec_t.values[i]));
    }
    expect(max_norm_dev <= 1e-10, "spectrum norm dev " + fmt(max_norm_dev));
    expect(max_transpose_dev <= 1e-10, "transpose dev " + fmt(max_transpose_dev));
    return "norm dev " + fmt(max_norm_dev) + ", transpose dev " + fmt(max_transpose_dev);
}

std::string check_schmidt_rank_one() {
    std::mt19937 rng(13);
    std::normal_distribution<double> gauss;
    Cutoff cut(20);
    Eigen::VectorXd u(cut.dim()), v(cut.dim());
    for (int i = 0; i < cut.dim(); ++i) {
        u(i) = gauss(rng);
        v(i) = gauss(rng);
    }
    u.normalize();
    v.normalize();
    TwoModeState st = TwoModeState::from_matrix(cut, u * v.transpose());
    const SchmidtSpectrum spec = schmidt(st);
    expect(std::abs(spec.values[0] - 1.0) <= 1e-12, "top value " + fmt(spec.values[0]));
    expect(spec.values[1] <= 1e-12, "second value " + fmt(spec.values[1]));
    return "top " + fmt(spec.values[0]) + ", second " + fmt(spec.values[1]);
}

std::string check_tail_mass() {
    TwoModeState vac(Cutoff(10));
    vac.coeff(0, 0) = 1.0;
    expect(tail_mass(vac, 1) == 0.0, "vacuum tail nonzero");

    const auto stored_band = [](double r, int k_max, int band) {
        const double l2 = std::tanh(r) * std::tanh(r);
        return std::pow(l2, k_max - band + 1) * (1.0 - std::pow(l2, band));
    };

    const TwoModeState safe = tmsvs(SqueezeParam(1.0), Cutoff(60));
    const double tail_safe = tail_mass(safe, 5);
    expect(tail_safe < 1e-12, "r=1 k_max=60 tail " + fmt(tail_safe));
    expect(std::abs(tail_safe - stored_band(1.0, 60, 5)) <= 1e-24, "closed form mismatch");

    bool flagged = false;
    try {
        tmsvs(SqueezeParam(2.0), Cutoff(10));
    } catch (const TruncationUnsafeError&) {
        flagged = true;
    }
    expect(flagged, "r=2 k_max=10 did not flag truncation-unsafe");
    const TwoModeState unsafe = tmsvs(SqueezeParam(2.0), Cutoff(10), true);
    const double tail_unsafe = tail_mass(unsafe, 2);
    expect(tail_unsafe > 1e-6, "r=2 tail " + fmt(tail_unsafe));
    expect(std::abs(tail_unsafe - stored_band(2.0, 10, 2)) <= 1e-12, "closed form mismatch");
    return "safe tail " + fmt(tail_safe) + ", unsafe tail " + fmt(tail_unsafe);
}

// ---- beamsplitter ----

std::string check_unitarity() {
    double max_dev = 0;
    for (int step = 1; step <= 15; ++step) {
        const BSAngle theta(0.1 * step);
        for (int m = 0; m <= 4; ++m) {
            for (int k = 0; k <= 40; ++k) {
                double sum = 0;
                for (int mp = 0; mp <= m + k; ++mp) {
                    const double b = bs_coefficient(m, mp, k, theta);
                    sum += b * b;
                }
                max_dev = std::max(max_dev, std::abs(sum - 1.0));
            }
        }
    }
    expect(max_dev <= 1e-12, "unitarity dev " + fmt(max_dev));
    return "max dev " + fmt(max_dev);
}

std::string check_selection_rule() {
    const oracle::BruteForceBS bs(BSAngle(0.5), 12);
    const int probes[][4] = {{1, 0, 4, 4}, {2, 1, 3, 3}, {0, 0, 2, 3}, {1, 1, 5, 3}, {3, 0, 2, 2}};
    double max_el = 0;
    for (const auto& p : probes) max_el = std::max(max_el, std::abs(bs.element(p[0], p[1], p[2], p[3])));
    expect(max_el <= 1e-9, "off-shell element " + fmt(max_el));
    return "max off-shell element " + fmt(max_el);
}

std::string check_special_identities() {
    double max_dev = 0;
    for (int step = 1; step <= 15; ++step) {
        const BSAngle theta(0.1 * step);
        const double c = theta.cos_theta(), s = theta.sin_theta();
        for (int k = 0; k <= 40; ++k) {
            max_dev = std::max(max_dev, std::abs(bs_coefficient(0, 0, k, theta) - std::pow(c, k)));
            max_dev = std::max(max_dev,
                               std::abs(bs_coefficient(1, 0, k, theta) - s * std::pow(c, k) * std::sqrt(k + 1.0)));
            const double catal = std::pow(c, k - 1) * (c * c - k * s * s);
            max_dev = std::max(max_dev, std::abs(bs_coefficient(1, 1, k, theta) - catal));
        }
    }
    expect(max_dev <= 1e-13, "identity dev " + fmt(max_dev));
    return "max dev " + fmt(max_dev);
}

std::string check_kill_zeros() {
    double max_val = 0;
    for (int k = 1; k <= 3; ++k) {
        const BSAngle theta = BSAngle::from_transmittance(double(k) / (k + 1));
        max_val = std::max(max_val, std::abs(bs_coefficient(1, 1, k, theta)));
    }
    max_val = std::max(max_val, std::abs(bs_coefficient(1, 1, 1, BSAngle(std::numbers::pi / 4))));
    expect(max_val <= 1e-14, "kill-zero residue " + fmt(max_val));
    return "max residue " + fmt(max_val);
}

std::string check_oracle_agreement() {
    double max_diff = 0;
    for (const double th : {0.2, 0.7, 1.2}) {
        const BSAngle theta(th);
        const oracle::BruteForceBS bs(theta, 20);
        for (int m = 0; m <= 3; ++m)
            for (int mp = 0; mp <= 5; ++mp)
                for (int k = 0; k <= 12; ++k) {
                    const int k_out = k + m - mp;
                    if (k_out < 0) continue;
                    const double diff = std::abs(bs_coefficient(m, mp, k, theta) - bs.element(m, mp, k, k_out));
                    max_diff = std::max(max_diff, diff);
                }
    }
    expect(max_diff <= 1e-9, "oracle diff " + fmt(max_diff));
    return "max diff " + fmt(max_diff);
}

std::string check_conditional_norm_identity() {
    std::mt19937 rng(17);
    TwoModeState st = random_normalized_state(15, rng);
    double max_dev = 0;
    for (const auto& [m, mp] : {std::pair{1, 1}, {1, 0}, {1, 2}, {2, 1}}) {
        const ConditionalOp op = make_conditional_op(m, mp, BSAngle(0.8), st.cutoff());
        for (const TwoModeSide side : {TwoModeSide::first, TwoModeSide::second}) {
            const TwoModeState out = apply_conditional(op, side, st);
            double expected = 0;
            for (int j = 0; j <= 15; ++j)
                for (int k = 0; k <= 15; ++k) {
                    const double b = op.b[side == TwoModeSide::first ? j : k];
                    expected += b * b * st.coeff(j, k) * st.coeff(j, k);
                }
            const double got = norm_squared(out) + (out.spill() - st.spill());
            max_dev = std::max(max_dev, std::abs(got - expected));
        }
    }
    expect(max_dev <= 1e-13, "norm identity dev " + fmt(max_dev));
    return "max dev " + fmt(max_dev);
}

// ---- protocols ----

std::string check_herald_completeness() {
    const SqueezeParam sq(0.8);
    const Cutoff cutoff = Cutoff::for_squeezing(0.8);
    const BSAngle theta = BSAngle::from_transmittance(0.6);
    double total = 0, spill_allowance = 0;
    for (int mp = 0; mp <= 1 + cutoff.k_max; ++mp) {
        HeraldSpec spec;
        spec.m = 1;
        spec.m_prime = mp;
        spec.theta_u = theta.theta();
        const ProtocolOutcome out = run_setup1(sq, spec, cutoff, {true, false});
        total += out.success_prob;
        spill_allowance += out.truncation_spill;
    }
    const double dev = std::abs(total - 1.0);
    expect(dev <= 1e-10 + spill_allowance, "completeness dev " + fmt(dev));
    return "sum dev " + fmt(dev) + " (spill allowance " + fmt(spill_allowance) + ")";
}

std::string check_two_route_entanglement() {
    const SqueezeParam sq(0.5);
    const Cutoff cutoff = Cutoff::for_squeezing(0.5);
    double max_dev = 0;
    const std::pair<int, int> heralds[] = {{1, 1}, {1, 0}, {1, 2}};
    for (const auto& [m, mp] : heralds) {
        for (const double t : {0.3, 0.5, 0.7}) {
            HeraldSpec spec;
            spec.m = m;
            spec.m_prime = mp;
            spec.theta_u = BSAngle::from_transmittance(t).theta();
            const ProtocolOutcome out = run_setup1(sq, spec, cutoff);
            if (!out.e_n) continue;
            const double via_schmidt = log_negativity_pure(schmidt(*out.state));
            max_dev = std::max(max_dev, std::abs(*out.e_n - via_schmidt));
        }
    }
    expect(max_dev <= 1e-10, "route disagreement " + fmt(max_dev));
    return "max disagreement " + fmt(max_dev);
}

std::string check_premix_zero_angle_reduction() {
    const SqueezeParam sq(0.5);
    const Cutoff cutoff = Cutoff::for_squeezing(0.5);
    double max_dev = 0, min_overlap = 1.0;
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            for (int mp = 0; mp <= 2; ++mp)
                for (int np = 0; np <= 2; ++np)
                    for (const double tu : {0.4, 1.0})
                        for (const double tl : {0.4, 1.0}) {
                            HeraldSpec spec;
                            spec.m = m;
                            spec.n = n;
                            spec.m_prime = mp;
                            spec.n_prime = np;
                            spec.theta_u = tu;
                            spec.theta_l = tl;
                            spec.theta_a = 0.0;
                            const ProtocolOutcome s2 = run_setup2(sq, spec, cutoff);
                            const ProtocolOutcome s1 = run_setup1(sq, spec, cutoff);
                            max_dev = std::max(max_dev, std::abs(s2.success_prob - s1.success_prob));
                            expect(s1.e_n.has_value() == s2.e_n.has_value(),
                                   "annihilation mismatch at m=" + std::to_string(m));
                            if (s1.e_n) {
                                max_dev = std::max(max_dev, std::abs(*s2.e_n - *s1.e_n));
                                min_overlap = std::min(min_overlap, state_overlap(*s1.state, *s2.state));
                            }
                        }
    expect(max_dev <= 1e-12, "reduction dev " + fmt(max_dev));
    expect(min_overlap >= 1.0 - 1e-12, "overlap " + fmt(min_overlap));
    return "max dev " + fmt(max_dev) + ", min overlap 1-" + fmt(1.0 - min_overlap);
}

std::string check_analytic_numeric_equivalence() {
    double max_dev = 0, min_overlap = 1.0;
    for (const double r : {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5}) {
        const SqueezeParam sq(r);
        const Cutoff cutoff = Cutoff::for_squeezing(r);
        for (const double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const BSAngle theta = BSAngle::from_transmittance(t);
            HeraldSpec spec;
            spec.m = 1;
            spec.theta_u = theta.theta();
            spec.theta_l = theta.theta();
            spec.theta_a = std::numbers::pi / 4;
            const ProtocolOutcome numeric = run_setup2(sq, spec, cutoff);
            const ProtocolOutcome analytic = setup2_addition_analytic(sq, theta, cutoff);
            max_dev = std::max(max_dev, std::abs(numeric.success_prob - analytic.success_prob));
            max_dev = std::max(max_dev, std::abs(*numeric.e_n - *analytic.e_n));
            min_overlap = std::min(min_overlap, state_overlap(*numeric.state, *analytic.state));
        }
    }
    expect(max_dev <= 1e-10, "analytic/numeric dev " + fmt(max_dev));
    expect(min_overlap >= 1.0 - 1e-10, "overlap " + fmt(min_overlap));
    return "max dev " + fmt(max_dev) + ", min overlap 1-" + fmt(1.0 - min_overlap);
}

std::string check_noop_baseline() {
    double max_delta = 0, max_success_dev = 0;
    for (const double r : {0.3, 0.9, 1.5}) {
        const ProtocolOutcome out = run_setup1(SqueezeParam(r), HeraldSpec{}, Cutoff::for_squeezing(r));
        max_delta = std::max(max_delta, std::abs(*out.delta_e_n));
        max_success_dev = std::max(max_success_dev, std::abs(out.success_prob - 1.0));
    }
    expect(max_delta <= 1e-9, "no-op delta " + fmt(max_delta));
    expect(max_success_dev <= 1e-12, "no-op success dev " + fmt(max_success_dev));
    return "max |delta| " + fmt(max_delta) + ", success dev " + fmt(max_success_dev);
}

std::string check_pair_distribution() {
    double max_sum_dev = 0, max_ratio_dev = 0;
    for (const double r : {0.3, 0.8, 1.5}) {
        const SqueezeParam sq(r);
        for (const double t : {0.02, 0.5, 0.98}) {
            const BSAngle theta = BSAngle::from_transmittance(t);
            const std::vector<double> p = pk_distribution(sq, theta, 200);
            double sum = 0;
            for (double v : p) sum += v;
            max_sum_dev = std::max(max_sum_dev, std::abs(sum - 1.0));
            const double x = sq.lambda() * sq.lambda() * t * t;
            for (int k = 0; k <= 50; ++k) {
                if (p[k] <= 0) continue;
                max_ratio_dev = std::max(max_ratio_dev, std::abs(p[k + 1] / p[k] - x * (k + 2) / (k + 1)));
            }
        }
    }
    expect(max_sum_dev <= 1e-12, "sum dev " + fmt(max_sum_dev));
    expect(max_ratio_dev <= 1e-12, "ratio dev " + fmt(max_ratio_dev));

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const SqueezeParam sq(0.01 + 2.2 * ur(rng));
        const BSAngle theta(0.01 + 1.55 * ur(rng));
        const double y = sq.lambda() * sq.lambda() * std::pow(theta.transmittance(), 2);
        int brute = 0;
        double best = std::log(1.0);
        for (int k = 1; k <= 500; ++k) {
            const double lp = std::log(k + 1.0) + k * std::log(y);
            if (lp > best) {
                best = lp;
                brute = k;
            }
        }
        expect(pk_mode(sq, theta) == brute, "mode mismatch at trial " + std::to_string(trial));
    }
    return "sum dev " + fmt(max_sum_dev) + ", ratio dev " + fmt(max_ratio_dev) + ", 100 mode probes";
}

// ---- entanglement ----

std::string check_uniform_maximizes() {
    std::mt19937 rng(23);
    for (int d = 1; d <= 6; ++d) {
        SchmidtSpectrum uniform{std::vector<double>(d, 1.0 / std::sqrt(double(d))), 0.0};
        const double top = log_negativity_pure(uniform);
        expect(std::abs(top - std::log2(double(d))) <= 1e-12, "uniform value at d=" + std::to_string(d));
        for (int trial = 0; trial < 200; ++trial) {
            const double e = log_negativity_pure(random_spectrum(d, rng));
            expect(e <= top + 1e-12, "random spectrum beat uniform at d=" + std::to_string(d));
            expect(e >= -1e-12, "negative log-negativity");
        }
    }
    return "d <= 6, 200 spectra each";
}

std::string check_permutation_invariance() {
    std::mt19937 rng(29);
    double max_dev = 0;
    for (int trial = 0; trial < 20; ++trial) {
        SchmidtSpectrum spec = random_spectrum(6, rng);
        const double base = log_negativity_pure(spec);
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            std::shuffle(spec.values.begin(), spec.values.end(), rng);
            max_dev = std::max(max_dev, std::abs(log_negativity_pure(spec) - base));
        }
    }
    expect(max_dev <= 1e-12, "permutation dev " + fmt(max_dev));
    return "max dev " + fmt(max_dev);
}

std::string check_report_consistency() {
    expect(std::abs(baseline_tmsvs(0.5) - 1.442695) <= 1e-6, "baseline at r=0.5");
    expect(std::abs(baseline_tmsvs(1.0) - 2.885390) <= 1e-6, "baseline at r=1");
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const SchmidtSpectrum spec = random_spectrum(5, rng);
        const EntanglementReport rep = entanglement_report(spec, 0.7);
        expect(rep.delta == rep.e_n - rep.baseline, "delta identity");
        expect(rep.e_n >= -1e-12, "negative e_n");
    }
    return "baseline anchors and report identity";
}

// ---- sweep_opt ----

SweepGrid small_grid() {
    SweepGrid g;
    g.r_min = 0.1;
    g.r_max = 0.9;
    g.r_steps = 8;
    g.t_min = 0.1;
    g.t_max = 0.9;
    g.t_steps = 8;
    return g;
}

HeraldSpec catalysis_spec() {
    HeraldSpec spec;
    spec.m = 1;
    spec.m_prime = 1;
    return spec;
}

std::string check_sweep_determinism() {
    const SweepGrid grid = small_grid();
    SweepOptions one;
    one.threads = 1;
    SweepOptions four;
    four.threads = 4;
    std::ostringstream a, b, c;
    write_table(sweep(Protocol::setup1, catalysis_spec(), grid, one), a);
    write_table(sweep(Protocol::setup1, catalysis_spec(), grid, one), b);
    write_table(sweep(Protocol::setup1, catalysis_spec(), grid, four), c);
    expect(a.str() == b.str(), "repeat run differed");
    expect(a.str() == c.str(), "thread count changed bytes");
    return "identical bytes across reruns and thread counts";
}

std::string check_refinement_soundness() {
    SweepGrid bounds;
    bounds.r_min = 0.05;
    bounds.r_max = 1.0;
    const double p_min = 0.1;
    const OptimumReport report = optimize(Protocol::setup1, catalysis_spec(), bounds, p_min);

    SweepGrid coarse = bounds;
    coarse.r_steps = 40;
    coarse.t_steps = 40;
    const SweepTable scan = sweep(Protocol::setup1, catalysis_spec(), coarse);
    double best_coarse = -1e300;
    for (const SweepRow& row : scan.rows)
        if (row.delta_e_n && row.success_prob >= p_min) best_coarse = std::max(best_coarse, *row.delta_e_n);

    expect(report.success_prob >= p_min, "constraint violated");
    expect(report.delta_e_n >= best_coarse - 1e-12,
           "refined " + fmt(report.delta_e_n) + " below coarse " + fmt(best_coarse));
    return "refined " + fmt(report.delta_e_n) + " >= coarse " + fmt(best_coarse);
}

std::string check_high_t_sanity() {
    HeraldSpec spec = catalysis_spec();
    spec.theta_u = BSAngle::from_transmittance(0.999).theta();
    const ProtocolOutcome out = run_setup1(SqueezeParam(0.8), spec, Cutoff::for_squeezing(0.8));
    expect(out.success_prob > 0.99, "success " + fmt(out.success_prob));
    expect(std::abs(*out.delta_e_n) < 0.02, "delta " + fmt(*out.delta_e_n));
    return "success " + fmt(out.success_prob) + ", delta " + fmt(*out.delta_e_n);
}

// ---- cli ----

std::string check_cli_determinism() {
    const char* argv[] = {"herald", "sweep",  "--protocol", "setup1", "--m",       "1",
                          "--m-prime", "1",   "--r-min",    "0.1",    "--r-max",   "0.5",
                          "--r-steps", "4",   "--t-min",    "0.1",    "--t-max",   "0.9",
                          "--t-steps", "4"};
    const int argc = static_cast<int>(std::size(argv));
    std::ostringstream out1, err1, out2, err2;
    const int code1 = run_cli(argc, argv, out1, err1);
    const int code2 = run_cli(argc, argv, out2, err2);
    expect(code1 == 0 && code2 == 0, "exit codes " + std::to_string(code1) + "/" + std::to_string(code2));
    expect(out1.str() == out2.str(), "stdout bytes differed");
    return "identical bytes, exit 0";
}

} // namespace

std::vector<CheckResult> run_all_checks() {
    const std::pair<const char*, std::function<std::string()>> checks[] = {
        {"fock/norm-preservation-under-bs", check_norm_preservation},
        {"fock/schmidt-normalization-and-transpose", check_schmidt_basics},
        {"fock/schmidt-rank-one", check_schmidt_rank_one},
        {"fock/tail-mass-closed-forms", check_tail_mass},
        {"bs/unitarity", check_unitarity},
        {"bs/selection-rule-oracle", check_selection_rule},
        {"bs/special-identities", check_special_identities},
        {"bs/catalysis-kill-zeros", check_kill_zeros},
        {"bs/oracle-agreement", check_oracle_agreement},
        {"bs/conditional-norm-identity", check_conditional_norm_identity},
        {"protocols/herald-completeness", check_herald_completeness},
        {"protocols/schmidt-form-two-route", check_two_route_entanglement},
        {"protocols/premix-zero-angle-reduction", check_premix_zero_angle_reduction},
        {"protocols/analytic-numeric-equivalence", check_analytic_numeric_equivalence},
        {"protocols/noop-baseline", check_noop_baseline},
        {"protocols/pair-distribution", check_pair_distribution},
        {"entanglement/uniform-maximizes", check_uniform_maximizes},
        {"entanglement/permutation-invariance", check_permutation_invariance},
        {"entanglement/report-consistency", check_report_consistency},
        {"sweep/determinism", check_sweep_determinism},
        {"sweep/refinement-soundness", check_refinement_soundness},
        {"sweep/catalysis-high-t-sanity", check_high_t_sanity},
        {"cli/byte-determinism", check_cli_determinism},
    };

    std::vector<CheckResult> results;
    results.reserve(std::size(checks));
    for (const auto& [name, fn] : checks) {
        CheckResult res;
        res.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            res.detail = fn();
            res.passed = true;
        } catch (const Failure& f) {
            res.detail = f.detail;
            res.passed = false;
        } catch (const std::exception& e) {
            res.detail = std::string("exception: ") + e.what();
            res.passed = false;
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(res));
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace herald
