#include "herald/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace herald::oracle {

namespace {

// exp(M) by scaling-and-squaring; Taylor terms until the next one is below
// 1e-18 relative to the running sum.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale > 0.25) {
        ++squarings;
        scale *= 0.5;
    }
    const Eigen::MatrixXd a = m * scale;
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int order = 1; order <= 60; ++order) {
        term = (a * term) / static_cast<double>(order);
        result += term;
        if (term.norm() < 1e-18 * result.norm()) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

} // namespace

BruteForceBS::BruteForceBS(const BSAngle& theta, int dim) : dim_(dim) {
    if (dim < 2) throw std::invalid_argument("BruteForceBS: dim too small");
    // Basis |j>_sys |a>_anc at flat index j*dim + a.
    const int n = dim * dim;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < dim; ++j) {
        for (int a = 0; a < dim; ++a) {
            // a'_sys a_anc : |j,a> -> sqrt((j+1) a) |j+1, a-1>
            if (j + 1 < dim && a >= 1)
                gen((j + 1) * dim + (a - 1), j * dim + a) += theta.theta() * std::sqrt(double(j + 1) * a);
            // -a'_anc a_sys : |j,a> -> -sqrt(j (a+1)) |j-1, a+1>
            if (j >= 1 && a + 1 < dim)
                gen((j - 1) * dim + (a + 1), j * dim + a) -= theta.theta() * std::sqrt(double(j) * (a + 1));
        }
    }
    u_ = expm(gen);
}

double BruteForceBS::element(int m, int m_prime, int k, int k_out) const {
    if (m < 0 || m_prime < 0 || k < 0 || k_out < 0)
        throw std::invalid_argument("BruteForceBS: negative index");
    if (m >= dim_ || m_prime >= dim_ || k >= dim_ || k_out >= dim_)
        throw std::invalid_argument("BruteForceBS: index outside truncation");
    return u_(k_out * dim_ + m_prime, k * dim_ + m);
}

double brute_force_bs_element(int m, int m_prime, int k, int k_out, const BSAngle& theta, int dim) {
    if (dim < k + m + 5) throw std::invalid_argument("brute_force_bs_element: dim too small for headroom");
    return BruteForceBS(theta, dim).element(m, m_prime, k, k_out);
}

std::vector<double> gram_schmidt_values(const TwoModeState& state) {
    const Eigen::MatrixXd& c = state.coeffs();
    const int n = static_cast<int>(c.rows());
    Eigen::MatrixXd g = c * c.transpose();

    // Cyclic Jacobi on the symmetric Gram matrix.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(g(p, q)));
        if (off < 1e-18 * std::max(1.0, g.diagonal().cwiseAbs().maxCoeff())) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = g(p, q);
                if (apq == 0.0) continue;
                const double tau = (g(q, q) - g(p, p)) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                for (int i = 0; i < n; ++i) {
                    const double gip = g(i, p), giq = g(i, q);
                    g(i, p) = cs * gip - sn * giq;
                    g(i, q) = sn * gip + cs * giq;
                }
                for (int i = 0; i < n; ++i) {
                    const double gpi = g(p, i), gqi = g(q, i);
                    g(p, i) = cs * gpi - sn * gqi;
                    g(q, i) = sn * gpi + cs * gqi;
                }
            }
        }
    }

    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = std::sqrt(std::max(0.0, g(i, i)));
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

} // namespace herald::oracle
