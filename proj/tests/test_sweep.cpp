#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "herald/sweep.hpp"

using namespace herald;

namespace {

HeraldSpec catalysis() {
    HeraldSpec spec;
    spec.m = 1;
    spec.m_prime = 1;
    return spec;
}

} // namespace

TEST_CASE("grid validation and spacing") {
    SweepGrid g;
    CHECK_NOTHROW(g.validate());
    g.r_min = 0.5;
    g.r_max = 0.5;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = SweepGrid{};
    g.t_max = 1.2;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = SweepGrid{};
    g.r_steps = 1;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);

    g = SweepGrid{};
    g.r_min = 0.1;
    g.r_max = 0.7;
    g.r_steps = 4;
    const std::vector<double> rs = g.r_values();
    CHECK(rs.size() == 4);
    CHECK(rs.front() == 0.1);
    CHECK(rs.back() == 0.7);
    CHECK(std::abs(rs[1] - 0.3) <= 1e-15);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e-3) == "0.001");
    for (double v : {1.0 / 3.0, 0.1 + 0.2, 5e-324, 1.442695040888963, -2.7e19}) {
        const std::string s = format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("thread resolution honors the environment cap") {
    setenv("HERALD_THREADS", "2", 1);
    CHECK(resolve_threads(8) == 2);
    CHECK(resolve_threads(1) == 1);
    setenv("HERALD_THREADS", "junk", 1);
    CHECK(resolve_threads(3) == 3);
    unsetenv("HERALD_THREADS");
    CHECK(resolve_threads(5) == 5);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("sweep rows match single-point runs") {
    SweepGrid g;
    g.r_min = 0.2;
    g.r_max = 0.6;
    g.r_steps = 2;
    g.t_min = 0.3;
    g.t_max = 0.7;
    g.t_steps = 2;
    const SweepTable table = sweep(Protocol::setup1, catalysis(), g);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].r == 0.2);
    CHECK(table.rows[1].r == 0.2); // r-major ordering
    CHECK(table.rows[1].t == 0.7);

    HeraldSpec spec = catalysis();
    spec.theta_u = BSAngle::from_transmittance(0.7).theta();
    const ProtocolOutcome direct =
        run_setup1(SqueezeParam(0.2), spec, Cutoff::for_squeezing(0.2), {true, true});
    CHECK(table.rows[1].success_prob == direct.success_prob);
    CHECK(*table.rows[1].e_n == *direct.e_n);
    CHECK(table.rows[1].spill == direct.truncation_spill);
}

TEST_CASE("sweep respects entanglement and cutoff options") {
    SweepGrid g;
    g.r_steps = 2;
    g.t_steps = 2;
    SweepOptions opts;
    opts.want_entanglement = false;
    opts.cutoff_override = 45;
    const SweepTable table = sweep(Protocol::setup1, catalysis(), g, opts);
    for (const SweepRow& row : table.rows) {
        CHECK(!row.e_n.has_value());
        CHECK(row.success_prob > 0.0);
    }
}

TEST_CASE("analytic protocol accepts only the premixed-addition herald") {
    SweepGrid g;
    g.r_steps = 2;
    g.t_steps = 2;
    CHECK_THROWS_AS(sweep(Protocol::setup2_analytic, catalysis(), g), std::invalid_argument);
    HeraldSpec addition;
    addition.m = 1;
    CHECK_NOTHROW(sweep(Protocol::setup2_analytic, addition, g));
}

TEST_CASE("csv round trip") {
    SweepGrid g;
    g.r_min = 0.1;
    g.r_max = 0.9;
    g.r_steps = 3;
    g.t_min = 0.2;
    g.t_max = 0.8;
    g.t_steps = 3;
    const SweepTable table = sweep(Protocol::setup1, catalysis(), g);

    std::ostringstream out;
    write_table(table, out);
    std::istringstream in(out.str());
    const SweepTable back = read_table(in);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(back.rows[i].r == table.rows[i].r);
        CHECK(back.rows[i].t == table.rows[i].t);
        CHECK(back.rows[i].success_prob == table.rows[i].success_prob);
        CHECK(back.rows[i].e_n.has_value() == table.rows[i].e_n.has_value());
        CHECK(*back.rows[i].e_n == *table.rows[i].e_n);
        CHECK(back.rows[i].spill == table.rows[i].spill);
    }
}

TEST_CASE("csv details") {
    SweepTable empty;
    std::ostringstream out;
    write_table(empty, out);
    CHECK(out.str() == "r,T,success_prob,E_N,delta_E_N,spill\n");

    // Undefined entanglement renders as empty cells and reads back as absent.
    SweepRow row;
    row.r = 0.5;
    row.t = 0.5;
    row.success_prob = 0.0;
    SweepTable one;
    one.rows.push_back(row);
    std::ostringstream out2;
    write_table(one, out2);
    CHECK(out2.str() == "r,T,success_prob,E_N,delta_E_N,spill\n0.5,0.5,0,,,0\n");
    std::istringstream in2(out2.str());
    const SweepTable back = read_table(in2);
    CHECK(!back.rows[0].e_n.has_value());
    CHECK(!back.rows[0].delta_e_n.has_value());

    std::istringstream bad_header("a,b\n");
    CHECK_THROWS_AS(read_table(bad_header), Error);
    std::istringstream short_row("r,T,success_prob,E_N,delta_E_N,spill\n1,2,3\n");
    CHECK_THROWS_AS(read_table(short_row), Error);
    std::istringstream bad_number("r,T,success_prob,E_N,delta_E_N,spill\n1,2,x,,,0\n");
    CHECK_THROWS_AS(read_table(bad_number), Error);
    std::istringstream empty_input("");
    CHECK_THROWS_AS(read_table(empty_input), Error);
}

TEST_CASE("optimizer basics") {
    SweepGrid bounds;
    bounds.r_min = 0.05;
    bounds.r_max = 0.3;
    bounds.t_min = 0.5;
    bounds.t_max = 0.9;
    HeraldSpec addition;
    addition.m = 1;

    CHECK_THROWS_AS(optimize(Protocol::setup1, addition, bounds, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimize(Protocol::setup1, addition, bounds, -0.1), std::invalid_argument);

    const OptimumReport report = optimize(Protocol::setup1, addition, bounds, 0.0);
    CHECK(report.best_r >= bounds.r_min);
    CHECK(report.best_r <= bounds.r_max);
    CHECK(report.best_t >= bounds.t_min);
    CHECK(report.best_t <= bounds.t_max);
    CHECK(report.success_prob > 0.0);
    CHECK(report.neighborhood.size() == 9);

    // An unreachable success floor has no feasible point.
    CHECK_THROWS_AS(optimize(Protocol::setup1, catalysis(), bounds, 0.99), NoFeasiblePointError);
}
