#pragma once

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

#include "herald/errors.hpp"

namespace herald {

// Norm-squared below this counts as an annihilated heralded branch.
inline constexpr double kZeroNormThreshold = 1e-30;
// tail_mass(state, kTailBand) at or above kTailAlarm flags the cutoff as unsafe.
inline constexpr double kTailAlarm = 1e-10;
inline constexpr int kTailBand = 5;

// Per-mode truncation limit: basis indices run 0..k_max inclusive.
struct Cutoff {
    int k_max;

    explicit Cutoff(int k_max_);

    // Adaptive default for a squeezed source with squeezing factor r.
    // Source mass beyond index K decays as tanh(r)^{2(K+1)}; the policy keeps the
    // amplitude-sum deficit tanh(r)^{K+1} below ~2e-11 so log-negativity truncation
    // error stays under 1e-10 for every r the default sweep grid reaches.
    static Cutoff for_squeezing(double r);

    int dim() const { return k_max + 1; }

    friend bool operator==(const Cutoff& a, const Cutoff& b) { return a.k_max == b.k_max; }
};

// Pure state of two modes with real amplitudes: coeffs(j, k) multiplies |j, k>.
// Immutable after construction except through the builder accessors; operations
// return new states. "spill" accumulates probability mass dropped at the
// truncation boundary by the operations that produced this state.
class TwoModeState {
public:
    explicit TwoModeState(Cutoff cutoff);
    static TwoModeState from_matrix(Cutoff cutoff, Eigen::MatrixXd coeffs, double spill = 0.0);

    Cutoff cutoff() const { return cutoff_; }
    const Eigen::MatrixXd& coeffs() const { return coeffs_; }
    double coeff(int j, int k) const { return coeffs_(j, k); }
    double& coeff(int j, int k) { return coeffs_(j, k); }
    double spill() const { return spill_; }
    void add_spill(double mass) { spill_ += mass; }
    bool normalized_flag() const { return normalized_; }
    void set_normalized_flag(bool f) { normalized_ = f; }

private:
    Cutoff cutoff_;
    Eigen::MatrixXd coeffs_;
    double spill_ = 0.0;
    bool normalized_ = false;
};

// The four rails of the premixed-ancilla circuit.
enum class FourMode { U = 0, L = 1, UA = 2, LA = 3 };

// Pure state of the two system modes (indices 0..k_max) plus two ancilla rails
// (indices 0..ancilla_cap). Stored flat, row-major in (k_U, k_L, a_U, a_L).
class FourModeState {
public:
    FourModeState(Cutoff cutoff, int ancilla_cap);

    Cutoff cutoff() const { return cutoff_; }
    int ancilla_cap() const { return ancilla_cap_; }
    const std::array<int, 4>& dims() const { return dims_; }
    const std::array<std::size_t, 4>& strides() const { return strides_; }

    std::size_t index(int k_u, int k_l, int a_u, int a_l) const {
        return ((static_cast<std::size_t>(k_u) * dims_[1] + k_l) * dims_[2] + a_u) * dims_[3] + a_l;
    }
    double at(int k_u, int k_l, int a_u, int a_l) const { return c_[index(k_u, k_l, a_u, a_l)]; }
    double& at(int k_u, int k_l, int a_u, int a_l) { return c_[index(k_u, k_l, a_u, a_l)]; }

    const std::vector<double>& data() const { return c_; }
    std::vector<double>& data() { return c_; }

    double spill() const { return spill_; }
    void add_spill(double mass) { spill_ += mass; }

private:
    Cutoff cutoff_;
    int ancilla_cap_;
    std::array<int, 4> dims_;
    std::array<std::size_t, 4> strides_;
    std::vector<double> c_;
    double spill_ = 0.0;
};

// Singular values of a bipartite pure state's coefficient matrix, descending.
// residual carries the truncation spill of the source state.
struct SchmidtSpectrum {
    std::vector<double> values;
    double residual = 0.0;
};

double norm_squared(const TwoModeState& state);
double norm_squared(const FourModeState& state);

// Returns the unit-norm state and the pre-normalization norm-squared (the branch
// probability when the input is a heralded branch). Throws ZeroStateError when
// the norm-squared is at or below kZeroNormThreshold.
std::pair<TwoModeState, double> normalize(const TwoModeState& state);

// Singular values of coeffs. Requires a normalized state (norm-squared within
// 1e-8 of 1, checked); throws ConvergenceFailureError if the decomposition does
// not satisfy its accuracy contract.
SchmidtSpectrum schmidt(const TwoModeState& state);

// Probability mass with any mode index above k_max - band (system indices only
// for the four-mode variant). band >= 0.
double tail_mass(const TwoModeState& state, int band);
double tail_mass(const FourModeState& state, int band);

} // namespace herald
