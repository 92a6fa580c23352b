#pragma once

#include "herald/fock.hpp"

namespace herald {

struct EntanglementReport {
    double e_n;      // bits
    double baseline; // bits, 2 r log2(e)
    double delta;    // e_n - baseline
};

// Logarithmic negativity of a pure bipartite state from its Schmidt values:
// log2[(sum_k s_k)^2]. Values below drop_threshold are excluded from the sum to
// suppress truncation noise. Requires sum s_k^2 = 1 within 1e-10 (DomainError).
double log_negativity_pure(const SchmidtSpectrum& spectrum, double drop_threshold = 1e-14);

// Log-negativity of the two-mode squeezed vacuum with squeezing factor r.
double baseline_tmsvs(double r);

EntanglementReport entanglement_report(const SchmidtSpectrum& spectrum, double r);

} // namespace herald
