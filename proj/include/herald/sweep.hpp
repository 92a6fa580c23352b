#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "herald/protocols.hpp"

namespace herald {

enum class Protocol { setup1, setup2, setup2_analytic };

// Inclusive linspace grid over squeezing r and transmittance T.
struct SweepGrid {
    double r_min = 0.05;
    double r_max = 1.5;
    int r_steps = 60;
    double t_min = 0.02;
    double t_max = 0.98;
    int t_steps = 60;

    void validate() const;
    std::vector<double> r_values() const;
    std::vector<double> t_values() const;
};

struct SweepRow {
    double r = 0.0;
    double t = 0.0;
    double success_prob = 0.0;
    std::optional<double> e_n;
    std::optional<double> delta_e_n;
    double spill = 0.0;
};

struct SweepTable {
    Protocol protocol = Protocol::setup1;
    HeraldSpec spec;
    SweepGrid grid;
    std::vector<SweepRow> rows; // row-major, r outer, T inner
};

struct SweepOptions {
    std::optional<int> cutoff_override;
    int threads = 0; // 0 = hardware concurrency; HERALD_THREADS caps either way
    bool want_entanglement = true;
};

// Evaluates the protocol at every grid point. The angle derived from each T is
// applied to both system BSs, except that a no-op mode of a setup-1 spec stays
// a no-op. Rows where the cutoff tail alarm fires carry the tail in the spill
// column instead of failing the sweep.
SweepTable sweep(Protocol protocol, const HeraldSpec& spec, const SweepGrid& grid,
                 const SweepOptions& opts = {});

struct OptimumReport {
    double best_r = 0.0;
    double best_t = 0.0;
    double delta_e_n = 0.0;
    double success_prob = 0.0;
    double p_min = 0.0;
    std::vector<SweepRow> neighborhood; // 3x3 local grid at the final step size
};

// argmax of delta_e_n subject to success_prob >= p_min: coarse 40x40 scan over
// the bounds, then 20 rounds of 3x3 refinement with step halving. Ties broken
// by higher success, then lower r, then lower T. NoFeasiblePointError when the
// constraint excludes every point.
OptimumReport optimize(Protocol protocol, const HeraldSpec& spec, const SweepGrid& bounds,
                       double p_min, const SweepOptions& opts = {});

// CSV: header "r,T,success_prob,E_N,delta_E_N,spill", UTF-8, LF endings, 12
// significant digits, empty cells for undefined e_n/delta_e_n. Deterministic.
void write_table(const SweepTable& table, std::ostream& out);
SweepTable read_table(std::istream& in);

// 12 significant digits, trailing zeros trimmed; "-0" never emitted.
std::string format_number(double v);

// Thread count after applying the HERALD_THREADS cap; requested 0 means
// hardware concurrency.
int resolve_threads(int requested);

} // namespace herald
