#include "herald/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace herald {

namespace {

// Flip the global sign so the largest-magnitude coefficient is positive.
TwoModeState canonical_sign(TwoModeState state) {
    const Eigen::MatrixXd& c = state.coeffs();
    double best = 0.0;
    double best_val = 0.0;
    for (int j = 0; j < c.rows(); ++j) {
        for (int k = 0; k < c.cols(); ++k) {
            const double a = std::abs(c(j, k));
            if (a > best) {
                best = a;
                best_val = c(j, k);
            }
        }
    }
    if (best_val < 0.0) {
        TwoModeState flipped = TwoModeState::from_matrix(state.cutoff(), -state.coeffs(), state.spill());
        flipped.set_normalized_flag(state.normalized_flag());
        return flipped;
    }
    return state;
}

// Band tail of the ideal squeezed source with the first index above k_max - band:
// identical to tail_mass(tmsvs(...), band) up to round-off, in closed form.
double source_band_tail(double lambda, int k_max, int band) {
    if (lambda == 0.0) return 0.0;
    const double l2 = lambda * lambda;
    return std::pow(l2, k_max - band + 1) * (1.0 - std::pow(l2, band));
}

void guard_source_tail(const SqueezeParam& sq, Cutoff cutoff, bool allow_truncation) {
    if (allow_truncation) return;
    if (source_band_tail(sq.lambda(), cutoff.k_max, kTailBand) >= kTailAlarm)
        throw TruncationUnsafeError("squeezed source tail at the cutoff exceeds the alarm level; "
                                    "raise the cutoff or allow truncation");
}

} // namespace

SqueezeParam::SqueezeParam(double r_) : r(r_) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("SqueezeParam: r must be finite and >= 0");
}

double SqueezeParam::lambda() const { return std::tanh(r); }
double SqueezeParam::prefactor() const { return 1.0 / std::cosh(r); }

void HeraldSpec::validate() const {
    if (m < 0 || n < 0 || m_prime < 0 || n_prime < 0)
        throw std::invalid_argument("HeraldSpec: photon counts must be >= 0");
    if (m + n > 4) throw std::invalid_argument("HeraldSpec: ancilla inputs above m + n = 4 are unsupported");
    // Angle ranges are enforced by BSAngle construction.
}

TwoModeState tmsvs(const SqueezeParam& sq, Cutoff cutoff, bool allow_truncation) {
    guard_source_tail(sq, cutoff, allow_truncation);
    TwoModeState st(cutoff);
    const double lam = sq.lambda();
    double w = sq.prefactor();
    for (int k = 0; k <= cutoff.k_max; ++k) {
        st.coeff(k, k) = w;
        w *= lam;
    }
    st.add_spill(std::pow(lam * lam, cutoff.k_max + 1)); // source mass beyond the cutoff
    st.set_normalized_flag(true);
    return st;
}

ProtocolOutcome run_setup1(const SqueezeParam& sq, const HeraldSpec& spec, Cutoff cutoff,
                           const RunOptions& opts) {
    spec.validate();
    guard_source_tail(sq, cutoff, opts.allow_truncation);

    const int k_max = cutoff.k_max;
    const ConditionalOp upper = make_conditional_op(spec.m, spec.m_prime, BSAngle(spec.theta_u), cutoff);
    const ConditionalOp lower = make_conditional_op(spec.n, spec.n_prime, BSAngle(spec.theta_l), cutoff);

    const double lam = sq.lambda();
    double w = sq.prefactor();
    double success = 0.0, sum_abs = 0.0;
    double spill = std::pow(lam * lam, k_max + 1);
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(cutoff.dim(), cutoff.dim());
    for (int k = 0; k <= k_max; ++k, w *= lam) {
        const double amp = w * upper.b[k] * lower.b[k];
        if (amp == 0.0) continue;
        const int row = k + upper.shift;
        const int col = k + lower.shift;
        if (row < 0 || col < 0) continue; // kernel zero guard already forces amp = 0 here
        if (row > k_max || col > k_max) {
            spill += amp * amp;
            continue;
        }
        coeffs(row, col) = amp;
        success += amp * amp;
        sum_abs += std::abs(amp);
    }

    ProtocolOutcome out;
    out.success_prob = success;
    out.truncation_spill = spill;
    if (!(success > kZeroNormThreshold)) return out; // branch annihilated

    TwoModeState state = TwoModeState::from_matrix(cutoff, coeffs / std::sqrt(success), spill);
    state.set_normalized_flag(true);
    out.state = canonical_sign(std::move(state));
    if (opts.want_entanglement) {
        // The branch is Schmidt-diagonal: the |amp| are its Schmidt values, so
        // E_N = log2[(sum |amp|)^2 / sum amp^2] directly.
        out.e_n = std::log2(sum_abs * sum_abs / success);
        out.delta_e_n = *out.e_n - baseline_tmsvs(sq.r);
    }
    return out;
}

ProtocolOutcome run_setup2(const SqueezeParam& sq, const HeraldSpec& spec, Cutoff cutoff,
                           const RunOptions& opts) {
    spec.validate();
    guard_source_tail(sq, cutoff, opts.allow_truncation);

    const int k_max = cutoff.k_max;
    // The cap must admit the premixed inputs (photon number m + n is conserved
    // across the ancilla pair) and the requested detection outcomes. System
    // photons reflected into an ancilla rail beyond the cap can never reach the
    // detected counts again (the later BS does not touch that rail), so they
    // are dropped as spill without affecting the heralded branch.
    const int cap = std::max({spec.m + spec.n, spec.m_prime, spec.n_prime});
    FourModeState st(cutoff, cap);
    const double lam = sq.lambda();
    double w = sq.prefactor();
    for (int k = 0; k <= k_max; ++k, w *= lam) st.at(k, k, spec.m, spec.n) = w;
    st.add_spill(std::pow(lam * lam, k_max + 1));

    st = apply_full_bs(st, FourMode::LA, FourMode::UA, BSAngle(spec.theta_a));
    st = apply_full_bs(st, FourMode::U, FourMode::UA, BSAngle(spec.theta_u));
    st = apply_full_bs(st, FourMode::L, FourMode::LA, BSAngle(spec.theta_l));

    TwoModeState branch(cutoff);
    for (int ku = 0; ku <= k_max; ++ku)
        for (int kl = 0; kl <= k_max; ++kl) branch.coeff(ku, kl) = st.at(ku, kl, spec.m_prime, spec.n_prime);
    branch.add_spill(st.spill());

    ProtocolOutcome out;
    out.success_prob = norm_squared(branch);
    out.truncation_spill = branch.spill();
    if (!(out.success_prob > kZeroNormThreshold)) return out;

    auto [normalized, n2] = normalize(branch);
    out.state = canonical_sign(std::move(normalized));
    if (opts.want_entanglement) {
        const SchmidtSpectrum spectrum = schmidt(*out.state);
        out.e_n = log_negativity_pure(spectrum);
        out.delta_e_n = *out.e_n - baseline_tmsvs(sq.r);
    }
    return out;
}

ProtocolOutcome setup2_addition_analytic(const SqueezeParam& sq, const BSAngle& theta, Cutoff cutoff,
                                         const RunOptions& opts) {
    if (theta.theta() <= 0.0) throw DomainError("setup2_addition_analytic: theta must be positive");
    guard_source_tail(sq, cutoff, opts.allow_truncation);

    const int k_max = cutoff.k_max;
    const double lam = sq.lambda();
    const double t = theta.transmittance();
    const double x = lam * t; // lambda cos^2
    const double y = x * x;
    const double pref2 = sq.prefactor() * sq.prefactor();
    const double success = pref2 * theta.reflectance() / ((1.0 - y) * (1.0 - y));

    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(cutoff.dim(), cutoff.dim());
    double xk = 1.0, stored = 0.0;
    for (int k = 0; k + 1 <= k_max; ++k, xk *= x) {
        const double amp = xk * std::sqrt(k + 1.0) / std::sqrt(2.0);
        coeffs(k + 1, k) = amp;
        coeffs(k, k + 1) = amp;
        stored += 2.0 * amp * amp;
    }
    // Pair components with k+1 above the cutoff: (1-y)^2 sum_{k>=k_max} (k+1) y^k.
    const int m_top = k_max - 1;
    const double tail_p = (m_top + 2) * std::pow(y, m_top + 1) - (m_top + 1) * std::pow(y, m_top + 2);

    ProtocolOutcome out;
    out.success_prob = success;
    out.truncation_spill = success * tail_p;
    TwoModeState state = TwoModeState::from_matrix(cutoff, coeffs / std::sqrt(stored), out.truncation_spill);
    state.set_normalized_flag(true);
    out.state = canonical_sign(std::move(state));
    if (opts.want_entanglement) {
        const SchmidtSpectrum spectrum = schmidt(*out.state);
        out.e_n = log_negativity_pure(spectrum);
        out.delta_e_n = *out.e_n - baseline_tmsvs(sq.r);
    }
    return out;
}

std::vector<double> pk_distribution(const SqueezeParam& sq, const BSAngle& theta, int k_limit) {
    if (k_limit < 0) throw std::invalid_argument("pk_distribution: k_limit must be >= 0");
    const double x = sq.lambda() * theta.transmittance();
    const double y = x * x;
    std::vector<double> p(k_limit + 1);
    double yk = 1.0;
    for (int k = 0; k <= k_limit; ++k, yk *= y) p[k] = (1.0 - y) * (1.0 - y) * yk * (k + 1);
    return p;
}

int pk_mode(const SqueezeParam& sq, const BSAngle& theta) {
    const double x = sq.lambda() * theta.transmittance();
    const double y = x * x;
    if (2.0 * y <= 1.0) return 0;
    const double k_peak = 1.0 / (1.0 - y) - 2.0;
    const int k0 = std::max(0, static_cast<int>(std::floor(k_peak)));
    const int k1 = k0 + 1;
    const auto log_p = [y](int k) { return std::log(k + 1.0) + k * std::log(y); };
    return log_p(k1) > log_p(k0) ? k1 : k0;
}

} // namespace herald
