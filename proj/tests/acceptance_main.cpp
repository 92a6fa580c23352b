// Acceptance runner: every release criterion as one pass/fail line with the
// measured numbers. Run with no arguments for the full set, or
// --criterion <1..12> for a single one (the ctest entries do the latter).
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "herald/oracles.hpp"
#include "herald/protocols.hpp"
#include "herald/sweep.hpp"

using namespace herald;

namespace {

struct Outcome {
    bool pass = false;
    bool soft = false; // pass with a logged deviation
    std::string detail;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

HeraldSpec herald_counts(int m, int n, int mp, int np) {
    HeraldSpec spec;
    spec.m = m;
    spec.n = n;
    spec.m_prime = mp;
    spec.n_prime = np;
    return spec;
}

struct GridMax {
    double value = -1e300;
    double r = 0.0;
    double t = 0.0;
};

GridMax max_delta(const SweepTable& table) {
    GridMax best;
    for (const SweepRow& row : table.rows)
        if (row.delta_e_n && *row.delta_e_n > best.value) best = {*row.delta_e_n, row.r, row.t};
    return best;
}

GridMax max_success(const SweepTable& table) {
    GridMax best;
    for (const SweepRow& row : table.rows)
        if (row.success_prob > best.value) best = {row.success_prob, row.r, row.t};
    return best;
}

// 1. Log-negativity of the squeezed source equals 2 r log2(e).
Outcome criterion_baseline() {
    double max_dev = 0.0;
    for (const double r : {0.1, 0.5, 1.0, 1.5}) {
        const TwoModeState st = tmsvs(SqueezeParam(r), Cutoff::for_squeezing(r));
        const double e_n = log_negativity_pure(schmidt(st));
        max_dev = std::max(max_dev, std::abs(e_n - baseline_tmsvs(r)));
    }
    return {max_dev <= 1e-9, false, "max |E_N - 2r log2 e| = " + fmt(max_dev) + " (bound 1e-9)"};
}

// 2. Conditional BS coefficients against the matrix-exponential oracle.
Outcome criterion_oracle() {
    double max_diff = 0.0;
    for (const double th : {0.2, 0.7, 1.2, std::numbers::pi / 4}) {
        const BSAngle theta(th);
        const oracle::BruteForceBS bs(theta, 20);
        for (int m = 0; m <= 3; ++m)
            for (int mp = 0; mp <= 5; ++mp)
                for (int k = 0; k <= 10; ++k) {
                    const int k_out = k + m - mp;
                    if (k_out < 0) {
                        max_diff = std::max(max_diff, std::abs(bs_coefficient(m, mp, k, theta)));
                        continue;
                    }
                    max_diff = std::max(
                        max_diff, std::abs(bs_coefficient(m, mp, k, theta) - bs.element(m, mp, k, k_out)));
                }
    }
    return {max_diff <= 1e-9, false, "max |B - oracle| = " + fmt(max_diff) + " (bound 1e-9)"};
}

// 3. Unitarity of the heralded-BS coefficient family.
Outcome criterion_unitarity() {
    double max_dev = 0.0;
    for (int step = 1; step <= 15; ++step) {
        const BSAngle theta(0.1 * step);
        for (int m = 0; m <= 4; ++m)
            for (int k = 0; k <= 40; ++k) {
                double sum = 0.0;
                for (int mp = 0; mp <= m + k; ++mp) {
                    const double b = bs_coefficient(m, mp, k, theta);
                    sum += b * b;
                }
                max_dev = std::max(max_dev, std::abs(sum - 1.0));
            }
    }
    return {max_dev <= 1e-12, false, "max |sum B^2 - 1| = " + fmt(max_dev) + " (bound 1e-12)"};
}

// 4. Single-photon catalysis closed form and its kill-zeros.
Outcome criterion_catalysis_form() {
    double max_dev = 0.0;
    for (int step = 1; step <= 15; ++step) {
        const BSAngle theta(0.1 * step);
        const double c = theta.cos_theta(), s = theta.sin_theta();
        for (int k = 0; k <= 40; ++k) {
            const double closed = std::pow(c, k - 1) * (c * c - k * s * s);
            max_dev = std::max(max_dev, std::abs(bs_coefficient(1, 1, k, theta) - closed));
        }
    }
    double max_kill = 0.0;
    for (int k = 1; k <= 3; ++k)
        max_kill = std::max(
            max_kill, std::abs(bs_coefficient(1, 1, k, BSAngle::from_transmittance(double(k) / (k + 1)))));
    const bool pass = max_dev <= 1e-13 && max_kill <= 1e-14;
    return {pass, false,
            "max closed-form dev " + fmt(max_dev) + " (bound 1e-13), max kill-zero residue " +
                fmt(max_kill) + " (bound 1e-14)"};
}

// 5. Independent-rail addition never enhances entanglement anywhere on the grid.
Outcome criterion_s1_addition_never_enhances() {
    const SweepTable table = sweep(Protocol::setup1, herald_counts(1, 0, 0, 0), SweepGrid{});
    const GridMax worst = max_delta(table);
    const bool pass = worst.value <= 1e-9;
    return {pass, false,
            "max delta_E_N = " + fmt(worst.value) + " at (r " + fmt(worst.r) + ", T " + fmt(worst.t) +
                ") on the 60x60 grid (bound 1e-9)"};
}

// 6. Independent-rail catalysis enhances somewhere, and every strongly
// enhancing point stays low-yield.
Outcome criterion_s1_catalysis_low_yield() {
    const SweepTable table = sweep(Protocol::setup1, herald_counts(1, 0, 1, 0), SweepGrid{});
    const GridMax best = max_delta(table);
    double worst_success = 0.0;
    for (const SweepRow& row : table.rows)
        if (row.delta_e_n && *row.delta_e_n > 0.05) worst_success = std::max(worst_success, row.success_prob);
    const bool pass = best.value > 0.0 && worst_success < 0.25;
    return {pass, false,
            "max delta_E_N = " + fmt(best.value) + " at (r " + fmt(best.r) + ", T " + fmt(best.t) +
                "); max success among points with delta > 0.05 is " + fmt(worst_success) +
                " (bound 0.25)"};
}

// 7. Premixed-circuit reductions: zero premix angle, and the closed form.
Outcome criterion_s2_reductions() {
    double max_red = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double r = 0.1 + 0.3 * i;
        const SqueezeParam sq(r);
        const Cutoff cutoff = Cutoff::for_squeezing(r);
        for (int j = 0; j < 5; ++j) {
            const double t = 0.1 + 0.2 * j;
            HeraldSpec spec = herald_counts(1, 0, 0, 0);
            spec.theta_u = BSAngle::from_transmittance(t).theta();
            spec.theta_l = spec.theta_u;
            spec.theta_a = 0.0;
            const ProtocolOutcome s2 = run_setup2(sq, spec, cutoff);
            const ProtocolOutcome s1 = run_setup1(sq, spec, cutoff);
            max_red = std::max(max_red, std::abs(s2.success_prob - s1.success_prob));
            max_red = std::max(max_red, std::abs(*s2.e_n - *s1.e_n));
        }
    }

    double max_eq = 0.0, min_overlap = 1.0;
    for (int i = 0; i < 10; ++i) {
        const double r = 0.1 + (1.5 - 0.1) * i / 9.0;
        const SqueezeParam sq(r);
        const Cutoff cutoff = Cutoff::for_squeezing(r);
        for (int j = 0; j < 10; ++j) {
            const double t = 0.05 + 0.1 * j;
            const BSAngle theta = BSAngle::from_transmittance(t);
            HeraldSpec spec = herald_counts(1, 0, 0, 0);
            spec.theta_u = theta.theta();
            spec.theta_l = theta.theta();
            const ProtocolOutcome numeric = run_setup2(sq, spec, cutoff);
            const ProtocolOutcome analytic = setup2_addition_analytic(sq, theta, cutoff);
            max_eq = std::max(max_eq, std::abs(numeric.success_prob - analytic.success_prob));
            max_eq = std::max(max_eq, std::abs(*numeric.e_n - *analytic.e_n));
            const double overlap =
                (numeric.state->coeffs().array() * analytic.state->coeffs().array()).sum();
            min_overlap = std::min(min_overlap, overlap);
        }
    }
    const bool pass = max_red <= 1e-12 && max_eq <= 1e-10 && min_overlap >= 1.0 - 1e-10;
    return {pass, false,
            "zero-premix reduction dev " + fmt(max_red) + " (bound 1e-12); closed-form dev " +
                fmt(max_eq) + " (bound 1e-10); overlap deficit " + fmt(1.0 - min_overlap) +
                " (bound 1e-10)"};
}

// 8. Premixed addition reaches a high-yield enhancing point; weak-squeezing
// limit gives one bit at success sin^2(theta).
Outcome criterion_s2_addition_headline() {
    const SweepTable table = sweep(Protocol::setup2, herald_counts(1, 0, 0, 0), SweepGrid{});
    GridMax best; // highest success among enhancing points
    for (const SweepRow& row : table.rows)
        if (row.delta_e_n && *row.delta_e_n > 0.0 && row.success_prob > best.value)
            best = {row.success_prob, row.r, row.t};

    const BSAngle theta = BSAngle::from_transmittance(0.5);
    HeraldSpec spec = herald_counts(1, 0, 0, 0);
    spec.theta_u = theta.theta();
    spec.theta_l = theta.theta();
    const ProtocolOutcome weak = run_setup2(SqueezeParam(1e-6), spec, Cutoff::for_squeezing(1e-6));
    const double e_dev = std::abs(*weak.e_n - 1.0);
    const double p_dev = std::abs(weak.success_prob - theta.reflectance());

    const bool pass = best.value > 0.70 && e_dev <= 1e-6 && p_dev <= 1e-6;
    return {pass, false,
            "best enhancing success = " + fmt(best.value) + " at (r " + fmt(best.r) + ", T " +
                fmt(best.t) + ") (need > 0.7); weak-squeezing |E_N - 1| = " + fmt(e_dev) +
                ", |success - sin^2 theta| = " + fmt(p_dev) + " (bounds 1e-6)"};
}

// 9. Premixed catalysis variants stay below premixed addition in best yield.
Outcome criterion_s2_catalysis_yield() {
    SweepOptions opts;
    opts.want_entanglement = false;
    const double add =
        max_success(sweep(Protocol::setup2, herald_counts(1, 0, 0, 0), SweepGrid{}, opts)).value;
    const double cat10 =
        max_success(sweep(Protocol::setup2, herald_counts(1, 0, 1, 0), SweepGrid{}, opts)).value;
    const double cat11 =
        max_success(sweep(Protocol::setup2, herald_counts(1, 1, 1, 1), SweepGrid{}, opts)).value;
    const bool pass = cat10 < add && cat11 < add;
    return {pass, false,
            "max success: addition " + fmt(add) + ", catalysis |10> " + fmt(cat10) + ", catalysis |11> " +
                fmt(cat11) + " (both must stay below addition)"};
}

// 10. Entangled-pair distribution: normalization, ratio identity, mode.
Outcome criterion_pair_distribution() {
    double max_sum_dev = 0.0, max_ratio_dev = 0.0;
    for (const double r : {0.3, 0.8, 1.5}) {
        const SqueezeParam sq(r);
        for (const double t : {0.02, 0.5, 0.98}) {
            const BSAngle theta = BSAngle::from_transmittance(t);
            const std::vector<double> p = pk_distribution(sq, theta, 200);
            double sum = 0.0;
            for (double v : p) sum += v;
            max_sum_dev = std::max(max_sum_dev, std::abs(sum - 1.0));
            const double x2 = std::pow(sq.lambda() * theta.transmittance(), 2);
            for (int k = 0; k <= 50; ++k)
                max_ratio_dev =
                    std::max(max_ratio_dev, std::abs(p[k + 1] / p[k] - x2 * (k + 2) / (k + 1)));
        }
    }

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    int mode_misses = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SqueezeParam sq(0.01 + 2.2 * ur(rng));
        const BSAngle theta(0.01 + 1.55 * ur(rng));
        const double y = std::pow(sq.lambda() * theta.transmittance(), 2);
        int brute = 0;
        double best = 0.0;
        for (int k = 1; k <= 500; ++k) {
            const double lp = std::log(k + 1.0) + k * std::log(y);
            if (lp > best) {
                best = lp;
                brute = k;
            }
        }
        if (pk_mode(sq, theta) != brute) ++mode_misses;
    }
    const bool pass = max_sum_dev <= 1e-12 && max_ratio_dev <= 1e-12 && mode_misses == 0;
    return {pass, false,
            "sum dev " + fmt(max_sum_dev) + ", ratio dev " + fmt(max_ratio_dev) +
                " (bounds 1e-12); mode mismatches " + std::to_string(mode_misses) + "/100"};
}

// 11. Success probabilities over all detector outcomes sum to one.
Outcome criterion_completeness() {
    const SqueezeParam sq(0.8);
    const Cutoff cutoff = Cutoff::for_squeezing(0.8);
    const double theta = BSAngle::from_transmittance(0.6).theta();
    double total = 0.0, spill = 0.0;
    for (int mp = 0; mp <= 1 + cutoff.k_max; ++mp) {
        HeraldSpec spec = herald_counts(1, 0, mp, 0);
        spec.theta_u = theta;
        const ProtocolOutcome out = run_setup1(sq, spec, cutoff, {true, false});
        total += out.success_prob;
        spill += out.truncation_spill;
    }
    const double dev = std::abs(total - 1.0);
    const bool pass = dev <= 1e-9 + spill;
    return {pass, false, "|sum - 1| = " + fmt(dev) + " (bound 1e-9 + spill " + fmt(spill) + ")"};
}

// 12. Best premixed-addition enhancement against best independent-rail
// catalysis enhancement on the identical grid.
Outcome criterion_enhancement_ratio() {
    const SweepTable add = sweep(Protocol::setup2, herald_counts(1, 0, 0, 0), SweepGrid{});
    const SweepTable cat = sweep(Protocol::setup1, herald_counts(1, 0, 1, 0), SweepGrid{});
    const GridMax best_add = max_delta(add);
    const GridMax best_cat = max_delta(cat);
    const double ratio = best_add.value / best_cat.value;

    Outcome out;
    out.detail = "max delta_E_N: premixed addition " + fmt(best_add.value) + " at (r " +
                 fmt(best_add.r) + ", T " + fmt(best_add.t) + "), catalysis " + fmt(best_cat.value) +
                 " at (r " + fmt(best_cat.r) + ", T " + fmt(best_cat.t) + "); ratio " + fmt(ratio) +
                 " (pass >= 3, soft-pass >= 2.5)";
    if (ratio >= 3.0) {
        out.pass = true;
    } else if (ratio >= 2.5) {
        out.pass = true;
        out.soft = true;
    }
    return out;
}

struct Criterion {
    const char* title;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"squeezed-baseline log-negativity identity", criterion_baseline},
        {"BS coefficients vs matrix-exponential oracle", criterion_oracle},
        {"heralded-BS unitarity", criterion_unitarity},
        {"single-photon catalysis closed form and kill-zeros", criterion_catalysis_form},
        {"independent-rail addition never enhances", criterion_s1_addition_never_enhances},
        {"independent-rail catalysis enhances at low yield", criterion_s1_catalysis_low_yield},
        {"premixed-circuit reductions (zero premix, closed form)", criterion_s2_reductions},
        {"premixed addition high-yield point and weak-squeezing limit", criterion_s2_addition_headline},
        {"premixed catalysis yields below premixed addition", criterion_s2_catalysis_yield},
        {"pair-distribution normalization, ratio, and mode", criterion_pair_distribution},
        {"herald completeness over detector outcomes", criterion_completeness},
        {"premixed addition vs catalysis enhancement ratio", criterion_enhancement_ratio},
    };

    int which = 0; // 0 runs everything
    if (argc == 3 && std::string(argv[1]) == "--criterion") {
        try {
            which = std::stoi(argv[2]);
        } catch (const std::exception&) {
            which = -1;
        }
        if (which < 1 || which > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [--criterion 1..%zu]\n", argv[0], criteria.size());
            return 2;
        }
    } else if (argc != 1) {
        std::fprintf(stderr, "usage: %s [--criterion 1..%zu]\n", argv[0], criteria.size());
        return 2;
    }

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (which != 0 && which != static_cast<int>(i + 1)) continue;
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome = {false, false, std::string("exception: ") + e.what()};
        }
        const char* verdict = outcome.pass ? (outcome.soft ? "SOFT-PASS" : "PASS") : "FAIL";
        std::printf("ACCEPTANCE %02zu %s %s: %s\n", i + 1, verdict, criteria[i].title,
                    outcome.detail.c_str());
        all_ok = all_ok && outcome.pass;
    }
    return all_ok ? 0 : 1;
}
