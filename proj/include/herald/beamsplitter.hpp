#pragma once

#include <vector>

#include "herald/fock.hpp"

namespace herald {

// Beam-splitter mixing angle theta in [0, pi/2]; transmittance T = cos^2(theta).
// When built from a transmittance, cos and sin are taken as sqrt(T) and
// sqrt(1 - T) exactly so that kill-zero cancellations at rational T are sharp.
class BSAngle {
public:
    explicit BSAngle(double theta);
    static BSAngle from_transmittance(double t);

    double theta() const { return theta_; }
    double cos_theta() const { return cos_; }
    double sin_theta() const { return sin_; }
    double transmittance() const { return cos_ * cos_; }
    double reflectance() const { return sin_ * sin_; }

private:
    BSAngle(double theta, double c, double s) : theta_(theta), cos_(c), sin_(s) {}

    double theta_;
    double cos_;
    double sin_;
};

// Matrix element B_{m,m',k} of the conditional beam-splitter operator: the
// amplitude for |k> (system) |m> (ancilla) to scatter to |k+m-m'> (system) with
// m' photons found in the ancilla. Exactly 0 when k + m - m' < 0. Evaluated
// through log-factorials; accurate to 1e-12 relative for m, m', k up to 200.
double bs_coefficient(int m, int m_prime, int k, const BSAngle& theta);

// Diagonal-in-k kernel of a heralded beam splitter: |k> -> b[k] |k + shift>.
struct ConditionalOp {
    int m;
    int m_prime;
    BSAngle angle;
    int shift;              // m - m_prime
    std::vector<double> b;  // b[k] = B_{m,m',k}, k = 0..k_max
};

ConditionalOp make_conditional_op(int m, int m_prime, const BSAngle& theta, Cutoff cutoff);

enum class TwoModeSide { first, second };

// Applies the heralded kernel to one mode of a two-mode state. The result is
// NOT normalized: its norm-squared is the branch probability. Amplitudes
// shifted above k_max are added to the output's spill.
TwoModeState apply_conditional(const ConditionalOp& op, TwoModeSide side, const TwoModeState& state);

// Full unitary beam splitter on a pair of rails of a four-mode state; mode_b
// plays the ancilla role, i.e. with occupations (k, m) on (mode_a, mode_b) the
// element <k+m-m', m'| B |k, m> equals bs_coefficient(m, m', k, theta).
// Norm is preserved up to the spill added for out-of-range output indices.
FourModeState apply_full_bs(const FourModeState& state, FourMode mode_a, FourMode mode_b,
                            const BSAngle& theta);

} // namespace herald
