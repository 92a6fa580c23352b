#pragma once

#include <numbers>
#include <optional>
#include <vector>

#include "herald/beamsplitter.hpp"
#include "herald/entanglement.hpp"
#include "herald/fock.hpp"

namespace herald {

struct SqueezeParam {
    double r;

    explicit SqueezeParam(double r_);
    double lambda() const;    // tanh r
    double prefactor() const; // sech r
};

// One heralding scenario: ancilla inputs (m, n), detected counts (m', n'),
// system-BS angles, and the ancilla premix angle (setup 2 only; setup 1 is the
// special case theta_a = 0). A mode with count 0, detected count 0, and angle 0
// is a no-op: its rail passes through untouched.
struct HeraldSpec {
    int m = 0;
    int n = 0;
    int m_prime = 0;
    int n_prime = 0;
    double theta_u = 0.0;
    double theta_l = 0.0;
    double theta_a = std::numbers::pi / 4; // ignored by setup 1

    void validate() const;
    bool upper_noop() const { return m == 0 && m_prime == 0 && theta_u == 0.0; }
    bool lower_noop() const { return n == 0 && n_prime == 0 && theta_l == 0.0; }
};

struct RunOptions {
    bool allow_truncation = false; // downgrade the tail assertion to spill accounting
    bool want_entanglement = true; // skip the Schmidt step when only success is needed
};

// Result of one heralded run. state/e_n/delta_e_n are absent when the branch is
// annihilated (success below the zero threshold) or when entanglement was not
// requested. truncation_spill bounds the probability mass this run lost to the
// cutoff anywhere in the pipeline (source tail plus per-operation drops).
struct ProtocolOutcome {
    std::optional<TwoModeState> state;
    double success_prob = 0.0;
    std::optional<double> e_n;
    std::optional<double> delta_e_n;
    double truncation_spill = 0.0;
};

// Two-mode squeezed vacuum: prefactor * sum_k lambda^k |k,k>. The state's spill
// carries the source mass beyond the cutoff. Throws TruncationUnsafeError when
// the band tail is at or above the alarm level, unless allow_truncation.
TwoModeState tmsvs(const SqueezeParam& sq, Cutoff cutoff, bool allow_truncation = false);

// Independent heralded BS on each system mode (detected counts m', n').
// The heralded branch is Schmidt-diagonal by construction, so e_n comes from
// the branch coefficients directly without a decomposition.
ProtocolOutcome run_setup1(const SqueezeParam& sq, const HeraldSpec& spec, Cutoff cutoff,
                           const RunOptions& opts = {});

// Premixed-ancilla circuit: ancilla rails carrying |m>,|n> are mixed by a BS at
// theta_a, each system mode is then mixed with its ancilla rail, and both rails
// are projected onto the detected counts. Evaluated on the full four-mode
// tensor; the heralded state is generally not Schmidt-diagonal.
ProtocolOutcome run_setup2(const SqueezeParam& sq, const HeraldSpec& spec, Cutoff cutoff,
                           const RunOptions& opts = {});

// Closed form for the premixed single-photon addition (m=1, n=0, m'=n'=0,
// theta_a = pi/4, theta_u = theta_l = theta): branch amplitudes
// (lambda cos^2 theta)^k sqrt(k+1) (|k+1,k> + |k,k+1>)/sqrt(2) and success
// prefactor^2 sin^2 theta / (1 - lambda^2 cos^4 theta)^2. DomainError at theta = 0.
ProtocolOutcome setup2_addition_analytic(const SqueezeParam& sq, const BSAngle& theta, Cutoff cutoff,
                                         const RunOptions& opts = {});

// Distribution over the entangled-pair components of the premixed addition
// output: p_k = (1 - x^2)^2 x^{2k} (k+1) with x = lambda cos^2 theta.
std::vector<double> pk_distribution(const SqueezeParam& sq, const BSAngle& theta, int k_limit);

// argmax_k p_k: 0 when 2 lambda^2 cos^4 theta <= 1, otherwise the better of
// floor/ceil of 1/(1 - lambda^2 cos^4 theta) - 2 (ties to the smaller k).
int pk_mode(const SqueezeParam& sq, const BSAngle& theta);

} // namespace herald
