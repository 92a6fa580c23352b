#include "herald/beamsplitter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace herald {

namespace {

constexpr int kLogFactTableSize = 1024;

// log(n!) table built by compensated summation of log(i); plain lgamma drifts
// past 1e-14 relative by n ~ 200, which the unitarity tolerance cannot absorb.
const double* log_fact_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactTableSize);
        t[0] = 0.0;
        double sum = 0.0, comp = 0.0;
        for (int i = 1; i < kLogFactTableSize; ++i) {
            const double y = std::log(static_cast<double>(i)) - comp;
            const double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            t[i] = sum;
        }
        return t;
    }();
    return table.data();
}

double log_fact(int n) {
    if (n < kLogFactTableSize) return log_fact_table()[n];
    return std::lgamma(n + 1.0);
}

double log_binom(int n, int k) { return log_fact(n) - log_fact(k) - log_fact(n - k); }

// base^e for integer e >= 0 with the 0^0 = 1 convention; returns the log
// contribution or signals a hard zero.
bool log_pow(double base, int e, double& log_out) {
    if (e == 0) {
        log_out = 0.0;
        return true;
    }
    if (base == 0.0) return false;
    log_out = e * std::log(base);
    return true;
}

} // namespace

BSAngle::BSAngle(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("BSAngle: theta outside [0, pi/2]");
    cos_ = std::cos(theta);
    sin_ = std::sin(theta);
    if (cos_ < 0.0) cos_ = 0.0; // round-off at theta = pi/2
}

BSAngle BSAngle::from_transmittance(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("BSAngle: transmittance outside [0, 1]");
    const double c = std::sqrt(t);
    const double s = std::sqrt(1.0 - t);
    return BSAngle(std::acos(std::min(1.0, c)), c, s);
}

double bs_coefficient(int m, int m_prime, int k, const BSAngle& theta) {
    if (m < 0 || m_prime < 0 || k < 0) throw std::invalid_argument("bs_coefficient: negative index");
    if (k + m - m_prime < 0) return 0.0; // output index would be negative

    const double c = theta.cos_theta();
    const double s = theta.sin_theta();
    const double log_ratio = 0.5 * (log_fact(m_prime) - log_fact(m))
                           + 0.5 * (log_fact(k + m - m_prime) - log_fact(k));

    // Terms alternate in sign; summed in ascending i. Magnitudes are bounded by
    // unitarity for the m <= 4 heralds in play, so plain accumulation holds
    // 1e-12 relative.
    double sum = 0.0;
    const int i_lo = std::max(0, m_prime - k);
    const int i_hi = std::min(m, m_prime);
    for (int i = i_lo; i <= i_hi; ++i) {
        double log_c, log_s;
        if (!log_pow(c, k + 2 * i - m_prime, log_c)) continue;
        if (!log_pow(s, m + m_prime - 2 * i, log_s)) continue;
        const double log_mag = log_binom(m, i) + log_binom(k, m_prime - i) + log_c + log_s + log_ratio;
        const double term = std::exp(log_mag);
        sum += ((m_prime - i) % 2 == 0) ? term : -term;
    }
    return sum;
}

ConditionalOp make_conditional_op(int m, int m_prime, const BSAngle& theta, Cutoff cutoff) {
    ConditionalOp op{m, m_prime, theta, m - m_prime, std::vector<double>(cutoff.dim())};
    for (int k = 0; k <= cutoff.k_max; ++k) op.b[k] = bs_coefficient(m, m_prime, k, theta);
    return op;
}

TwoModeState apply_conditional(const ConditionalOp& op, TwoModeSide side, const TwoModeState& state) {
    const int k_max = state.cutoff().k_max;
    if (static_cast<int>(op.b.size()) != k_max + 1)
        throw std::invalid_argument("apply_conditional: op cutoff does not match state");

    TwoModeState out(state.cutoff());
    out.add_spill(state.spill());
    const Eigen::MatrixXd& in = state.coeffs();
    for (int j = 0; j <= k_max; ++j) {
        for (int k = 0; k <= k_max; ++k) {
            const double v = in(j, k);
            if (v == 0.0) continue;
            const int sel = (side == TwoModeSide::first) ? j : k;
            const double amp = op.b[sel] * v;
            if (amp == 0.0) continue;
            const int shifted = sel + op.shift;
            if (shifted < 0) continue; // b[sel] is exactly 0 here by the guard
            if (shifted > k_max) {
                out.add_spill(amp * amp);
                continue;
            }
            if (side == TwoModeSide::first)
                out.coeff(shifted, k) += amp;
            else
                out.coeff(j, shifted) += amp;
        }
    }
    return out;
}

namespace {

// Scatter table for one BS application: col(ib, ia) lists B_{ib, ib', ia} for
// ib' = 0..ia+ib. Rebuilt per (theta, dims); a two-slot cache catches the
// common case of the same angle applied to both system rails.
struct BsKernel {
    double theta = -1.0;
    int da = 0, db = 0;
    std::vector<std::vector<double>> col;

    const std::vector<double>& column(int ib, int ia) const { return col[static_cast<std::size_t>(ib) * da + ia]; }
};

const BsKernel& kernel_for(const BSAngle& theta, int da, int db) {
    static thread_local BsKernel cache[2];
    static thread_local int next_slot = 0;
    for (const BsKernel& k : cache)
        if (k.theta == theta.theta() && k.da == da && k.db == db) return k;

    BsKernel& k = cache[next_slot];
    next_slot = (next_slot + 1) % 2;
    k.theta = theta.theta();
    k.da = da;
    k.db = db;
    k.col.assign(static_cast<std::size_t>(da) * db, {});
    for (int ib = 0; ib < db; ++ib) {
        for (int ia = 0; ia < da; ++ia) {
            auto& column = k.col[static_cast<std::size_t>(ib) * da + ia];
            column.resize(ia + ib + 1);
            for (int ibp = 0; ibp <= ia + ib; ++ibp) column[ibp] = bs_coefficient(ib, ibp, ia, theta);
        }
    }
    return k;
}

} // namespace

FourModeState apply_full_bs(const FourModeState& state, FourMode mode_a, FourMode mode_b,
                            const BSAngle& theta) {
    const int qa = static_cast<int>(mode_a);
    const int qb = static_cast<int>(mode_b);
    if (qa == qb || qa < 0 || qa > 3 || qb < 0 || qb > 3)
        throw std::invalid_argument("apply_full_bs: invalid mode pair");

    const auto& dims = state.dims();
    const auto& strides = state.strides();
    const int da = dims[qa], db = dims[qb];
    const std::size_t sta = strides[qa], stb = strides[qb];

    int spect[2], si = 0;
    for (int q = 0; q < 4; ++q)
        if (q != qa && q != qb) spect[si++] = q;

    const BsKernel& kern = kernel_for(theta, da, db);

    FourModeState out(state.cutoff(), state.ancilla_cap());
    out.add_spill(state.spill());
    const std::vector<double>& in = state.data();
    std::vector<double>& dst = out.data();
    std::vector<double> acc(static_cast<std::size_t>(da + db - 1));
    double spill = 0.0;

    for (int i0 = 0; i0 < dims[spect[0]]; ++i0) {
        for (int i1 = 0; i1 < dims[spect[1]]; ++i1) {
            const std::size_t base = static_cast<std::size_t>(i0) * strides[spect[0]]
                                   + static_cast<std::size_t>(i1) * strides[spect[1]];
            // Photon number in the pair (s = ia + ib) is conserved; process each
            // s-block independently and skip blocks with no amplitude.
            for (int s = 0; s <= da + db - 2; ++s) {
                const int ib_lo = std::max(0, s - (da - 1));
                const int ib_hi = std::min(db - 1, s);
                bool any = false;
                for (int ib = ib_lo; ib <= ib_hi && !any; ++ib)
                    any = in[base + static_cast<std::size_t>(s - ib) * sta + static_cast<std::size_t>(ib) * stb] != 0.0;
                if (!any) continue;

                std::fill(acc.begin(), acc.begin() + (s + 1), 0.0);
                for (int ib = ib_lo; ib <= ib_hi; ++ib) {
                    const double v = in[base + static_cast<std::size_t>(s - ib) * sta + static_cast<std::size_t>(ib) * stb];
                    if (v == 0.0) continue;
                    const std::vector<double>& column = kern.column(ib, s - ib);
                    for (int ibp = 0; ibp <= s; ++ibp) acc[ibp] += column[ibp] * v;
                }
                for (int ibp = 0; ibp <= s; ++ibp) {
                    const int iap = s - ibp;
                    const double w = acc[ibp];
                    if (ibp < db && iap < da)
                        dst[base + static_cast<std::size_t>(iap) * sta + static_cast<std::size_t>(ibp) * stb] = w;
                    else
                        spill += w * w;
                }
            }
        }
    }
    out.add_spill(spill);
    return out;
}

} // namespace herald
