#include "herald/fock.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace herald {

Cutoff::Cutoff(int k_max_) : k_max(k_max_) {
    if (k_max < 1) throw std::invalid_argument("Cutoff: k_max must be >= 1");
}

Cutoff Cutoff::for_squeezing(double r) {
    if (r < 0 || !std::isfinite(r)) throw std::invalid_argument("Cutoff::for_squeezing: r must be finite and >= 0");
    int need = 40;
    const double lambda = std::tanh(r);
    if (lambda > 0) {
        // lambda^{K+1} <= e^{-24.5} ~ 2.3e-11
        need = static_cast<int>(std::ceil(24.5 / -std::log(lambda)));
    }
    return Cutoff(std::clamp(need, 40, 300));
}

TwoModeState::TwoModeState(Cutoff cutoff)
    : cutoff_(cutoff), coeffs_(Eigen::MatrixXd::Zero(cutoff.dim(), cutoff.dim())) {}

TwoModeState TwoModeState::from_matrix(Cutoff cutoff, Eigen::MatrixXd coeffs, double spill) {
    if (coeffs.rows() != cutoff.dim() || coeffs.cols() != cutoff.dim())
        throw std::invalid_argument("TwoModeState: coefficient matrix does not match cutoff");
    if (!coeffs.allFinite()) throw std::invalid_argument("TwoModeState: non-finite amplitude");
    TwoModeState st(cutoff);
    st.coeffs_ = std::move(coeffs);
    st.spill_ = spill;
    return st;
}

FourModeState::FourModeState(Cutoff cutoff, int ancilla_cap)
    : cutoff_(cutoff), ancilla_cap_(ancilla_cap) {
    if (ancilla_cap < 0) throw std::invalid_argument("FourModeState: ancilla_cap must be >= 0");
    const int s = cutoff.dim();
    const int a = ancilla_cap + 1;
    dims_ = {s, s, a, a};
    strides_[3] = 1;
    strides_[2] = static_cast<std::size_t>(a);
    strides_[1] = static_cast<std::size_t>(a) * a;
    strides_[0] = static_cast<std::size_t>(s) * a * a;
    c_.assign(static_cast<std::size_t>(s) * s * a * a, 0.0);
}

double norm_squared(const TwoModeState& state) { return state.coeffs().squaredNorm(); }

double norm_squared(const FourModeState& state) {
    double sum = 0.0;
    for (double v : state.data()) sum += v * v;
    return sum;
}

std::pair<TwoModeState, double> normalize(const TwoModeState& state) {
    const double n2 = norm_squared(state);
    if (!(n2 > kZeroNormThreshold))
        throw ZeroStateError("normalize: branch annihilated (norm-squared <= zero threshold)");
    TwoModeState out = TwoModeState::from_matrix(state.cutoff(), state.coeffs() / std::sqrt(n2), state.spill());
    out.set_normalized_flag(true);
    return {std::move(out), n2};
}

SchmidtSpectrum schmidt(const TwoModeState& state) {
    const double n2 = norm_squared(state);
    if (std::abs(n2 - 1.0) > 1e-8) throw DomainError("schmidt: state is not normalized");

    const Eigen::MatrixXd& c = state.coeffs();
    Eigen::VectorXd sv;
    if (c.rows() <= 32) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
        if (svd.info() != Eigen::Success) throw ConvergenceFailureError("schmidt: SVD did not converge");
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(c);
        if (svd.info() != Eigen::Success) throw ConvergenceFailureError("schmidt: SVD did not converge");
        sv = svd.singularValues();
    }

    SchmidtSpectrum spec;
    spec.values.assign(sv.data(), sv.data() + sv.size());
    spec.residual = state.spill();

    double sum2 = 0.0;
    for (double v : spec.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConvergenceFailureError("schmidt: invalid singular value");
        sum2 += v * v;
    }
    if (std::abs(sum2 - n2) > 1e-8) throw ConvergenceFailureError("schmidt: singular values lost norm");
    return spec;
}

double tail_mass(const TwoModeState& state, int band) {
    if (band < 0) throw std::invalid_argument("tail_mass: band must be >= 0");
    const int k_max = state.cutoff().k_max;
    const int lo = k_max - band; // indices above this are in the tail
    const Eigen::MatrixXd& c = state.coeffs();
    double mass = 0.0;
    for (int j = 0; j <= k_max; ++j)
        for (int k = 0; k <= k_max; ++k)
            if (j > lo || k > lo) mass += c(j, k) * c(j, k);
    return mass;
}

double tail_mass(const FourModeState& state, int band) {
    if (band < 0) throw std::invalid_argument("tail_mass: band must be >= 0");
    const int k_max = state.cutoff().k_max;
    const int lo = k_max - band;
    const auto& dims = state.dims();
    double mass = 0.0;
    for (int ku = 0; ku < dims[0]; ++ku) {
        for (int kl = 0; kl < dims[1]; ++kl) {
            if (ku <= lo && kl <= lo) continue;
            for (int au = 0; au < dims[2]; ++au)
                for (int al = 0; al < dims[3]; ++al) {
                    const double v = state.at(ku, kl, au, al);
                    mass += v * v;
                }
        }
    }
    return mass;
}

} // namespace herald
