#pragma once

#include <Eigen/Dense>

#include <vector>

#include "herald/beamsplitter.hpp"
#include "herald/fock.hpp"

namespace herald::oracle {

// Reference two-mode BS built the slow way: the generator theta (a' aA - aA' a)
// as a dense matrix on a space truncated at dim photons per mode, exponentiated
// by scaling and squaring with a Taylor series. Shares no code with
// bs_coefficient. Construction is O(dim^6); reuse one instance per angle.
class BruteForceBS {
public:
    BruteForceBS(const BSAngle& theta, int dim);

    // <k_out, m'| B |k, m>. Valid for indices with k + m + 5 <= dim so that
    // truncation tails are negligible.
    double element(int m, int m_prime, int k, int k_out) const;
    int dim() const { return dim_; }

private:
    int dim_;
    Eigen::MatrixXd u_;
};

// One-shot convenience around BruteForceBS. Requires dim >= k + m + 5.
double brute_force_bs_element(int m, int m_prime, int k, int k_out, const BSAngle& theta, int dim);

// Reference Schmidt values: cyclic Jacobi eigendecomposition of the Gram matrix
// c c^T, eigenvalues clamped at zero, square-rooted, sorted descending. Shares
// no decomposition code with schmidt(). The Gram route squares the condition
// number, so values below ~1e-7 carry absolute error up to ~1e-8; compare
// against it only down to that scale.
std::vector<double> gram_schmidt_values(const TwoModeState& state);

} // namespace herald::oracle
