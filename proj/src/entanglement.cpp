#include "herald/entanglement.hpp"

#include <cmath>
#include <numbers>

namespace herald {

double log_negativity_pure(const SchmidtSpectrum& spectrum, double drop_threshold) {
    double sum = 0.0, sum2 = 0.0;
    for (double v : spectrum.values) {
        sum2 += v * v;
        if (v >= drop_threshold) sum += v;
    }
    if (std::abs(sum2 - 1.0) > 1e-10)
        throw DomainError("log_negativity_pure: Schmidt values are not normalized");
    return 2.0 * std::log2(sum);
}

double baseline_tmsvs(double r) {
    if (r < 0) throw std::invalid_argument("baseline_tmsvs: r must be >= 0");
    return 2.0 * r * std::numbers::log2e;
}

EntanglementReport entanglement_report(const SchmidtSpectrum& spectrum, double r) {
    const double e_n = log_negativity_pure(spectrum);
    const double base = baseline_tmsvs(r);
    return {e_n, base, e_n - base};
}

} // namespace herald
