#include "herald/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace herald {

void SweepGrid::validate() const {
    if (!(r_min >= 0.0) || !(r_min < r_max)) throw std::invalid_argument("SweepGrid: need 0 <= r_min < r_max");
    if (!(t_min >= 0.0) || !(t_min < t_max) || !(t_max <= 1.0))
        throw std::invalid_argument("SweepGrid: need 0 <= t_min < t_max <= 1");
    if (r_steps < 2 || t_steps < 2) throw std::invalid_argument("SweepGrid: steps must be >= 2");
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

} // namespace

std::vector<double> SweepGrid::r_values() const { return linspace(r_min, r_max, r_steps); }
std::vector<double> SweepGrid::t_values() const { return linspace(t_min, t_max, t_steps); }

int resolve_threads(int requested) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int n = requested > 0 ? requested : hw;
    if (const char* env = std::getenv("HERALD_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) n = std::min<long>(n, v);
    }
    return std::max(1, n);
}

namespace {

SweepRow eval_point(Protocol protocol, const HeraldSpec& base, double r, double t,
                    const SweepOptions& opts) {
    const BSAngle angle = BSAngle::from_transmittance(t);
    HeraldSpec spec = base;
    if (protocol == Protocol::setup1) {
        // A no-op mode stays a no-op; active modes take the grid angle.
        if (!base.upper_noop()) spec.theta_u = angle.theta();
        if (!base.lower_noop()) spec.theta_l = angle.theta();
    } else {
        spec.theta_u = angle.theta();
        spec.theta_l = angle.theta();
    }
    const SqueezeParam sq(r);
    const Cutoff cutoff = opts.cutoff_override ? Cutoff(*opts.cutoff_override) : Cutoff::for_squeezing(r);
    const RunOptions run_opts{true, opts.want_entanglement};

    ProtocolOutcome outcome;
    switch (protocol) {
        case Protocol::setup1: outcome = run_setup1(sq, spec, cutoff, run_opts); break;
        case Protocol::setup2: outcome = run_setup2(sq, spec, cutoff, run_opts); break;
        case Protocol::setup2_analytic:
            outcome = setup2_addition_analytic(sq, angle, cutoff, run_opts);
            break;
    }
    return {r, t, outcome.success_prob, outcome.e_n, outcome.delta_e_n, outcome.truncation_spill};
}

void check_protocol_spec(Protocol protocol, const HeraldSpec& spec) {
    spec.validate();
    if (protocol == Protocol::setup2_analytic &&
        (spec.m != 1 || spec.n != 0 || spec.m_prime != 0 || spec.n_prime != 0))
        throw std::invalid_argument("setup2_analytic covers only the (m=1, n=0, m'=0, n'=0) herald");
}

} // namespace

SweepTable sweep(Protocol protocol, const HeraldSpec& spec, const SweepGrid& grid,
                 const SweepOptions& opts) {
    grid.validate();
    check_protocol_spec(protocol, spec);

    const std::vector<double> rs = grid.r_values();
    const std::vector<double> ts = grid.t_values();
    const int total = grid.r_steps * grid.t_steps;

    SweepTable table{protocol, spec, grid, std::vector<SweepRow>(total)};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto eval = [&](int idx) {
        const int ir = idx / grid.t_steps;
        const int it = idx % grid.t_steps;
        table.rows[idx] = eval_point(protocol, spec, rs[ir], ts[it], opts);
    };
    const auto eval_range = [&](int begin, int stride) {
        try {
            for (int idx = begin; idx < total; idx += stride) eval(idx);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int threads = std::min(resolve_threads(opts.threads), total);
    if (threads <= 1) {
        eval_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) pool.emplace_back(eval_range, w, threads);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return table;
}

namespace {

bool feasible(const SweepRow& row, double p_min) {
    return row.delta_e_n.has_value() && row.success_prob >= p_min;
}

// Lexicographic: larger delta, then larger success, then smaller r, then smaller T.
bool better(const SweepRow& a, const SweepRow& b) {
    if (*a.delta_e_n != *b.delta_e_n) return *a.delta_e_n > *b.delta_e_n;
    if (a.success_prob != b.success_prob) return a.success_prob > b.success_prob;
    if (a.r != b.r) return a.r < b.r;
    return a.t < b.t;
}

} // namespace

OptimumReport optimize(Protocol protocol, const HeraldSpec& spec, const SweepGrid& bounds,
                       double p_min, const SweepOptions& opts) {
    if (!(p_min >= 0.0 && p_min < 1.0)) throw std::invalid_argument("optimize: p_min must be in [0, 1)");
    bounds.validate();
    check_protocol_spec(protocol, spec);

    SweepGrid coarse = bounds;
    coarse.r_steps = 40;
    coarse.t_steps = 40;
    const SweepTable scan = sweep(protocol, spec, coarse, opts);

    const SweepRow* incumbent_ptr = nullptr;
    for (const SweepRow& row : scan.rows) {
        if (!feasible(row, p_min)) continue;
        if (!incumbent_ptr || better(row, *incumbent_ptr)) incumbent_ptr = &row;
    }
    if (!incumbent_ptr) throw NoFeasiblePointError("optimize: no grid point satisfies the success constraint");
    SweepRow incumbent = *incumbent_ptr;

    const auto clamp = [](double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); };
    double step_r = (bounds.r_max - bounds.r_min) / (coarse.r_steps - 1) / 2.0;
    double step_t = (bounds.t_max - bounds.t_min) / (coarse.t_steps - 1) / 2.0;

    const auto neighborhood_at = [&](double step_r_, double step_t_) {
        std::vector<SweepRow> rows;
        rows.reserve(9);
        for (int i = -1; i <= 1; ++i) {
            for (int j = -1; j <= 1; ++j) {
                const double r = clamp(incumbent.r + i * step_r_, bounds.r_min, bounds.r_max);
                const double t = clamp(incumbent.t + j * step_t_, bounds.t_min, bounds.t_max);
                rows.push_back((i == 0 && j == 0) ? incumbent : eval_point(protocol, spec, r, t, opts));
            }
        }
        return rows;
    };

    for (int round = 0; round < 20; ++round) {
        for (const SweepRow& row : neighborhood_at(step_r, step_t))
            if (feasible(row, p_min) && better(row, incumbent)) incumbent = row;
        step_r /= 2.0;
        step_t /= 2.0;
    }

    OptimumReport report;
    report.best_r = incumbent.r;
    report.best_t = incumbent.t;
    report.delta_e_n = *incumbent.delta_e_n;
    report.success_prob = incumbent.success_prob;
    report.p_min = p_min;
    report.neighborhood = neighborhood_at(step_r, step_t);
    return report;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    for (int prec = 12; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

static const char* const kCsvHeader = "r,T,success_prob,E_N,delta_E_N,spill";

void write_table(const SweepTable& table, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SweepRow& row : table.rows) {
        out << format_number(row.r) << ',' << format_number(row.t) << ','
            << format_number(row.success_prob) << ','
            << (row.e_n ? format_number(*row.e_n) : std::string()) << ','
            << (row.delta_e_n ? format_number(*row.delta_e_n) : std::string()) << ','
            << format_number(row.spill) << '\n';
    }
}

SweepTable read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("read_table: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw Error("read_table: unrecognized header");

    SweepTable table;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cells.size() != 6) throw Error("read_table: expected 6 columns");
        const auto num = [](const std::string& s) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                throw Error("read_table: malformed number");
            }
            if (used != s.size()) throw Error("read_table: malformed number");
            return v;
        };
        SweepRow row;
        row.r = num(cells[0]);
        row.t = num(cells[1]);
        row.success_prob = num(cells[2]);
        if (!cells[3].empty()) row.e_n = num(cells[3]);
        if (!cells[4].empty()) row.delta_e_n = num(cells[4]);
        row.spill = num(cells[5]);
        table.rows.push_back(row);
    }
    return table;
}

} // namespace herald
