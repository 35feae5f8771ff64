#include <doctest.h>

#include <cmath>
#include <limits>

#include "hsint/schemes_hs.hpp"
#include "hsint/waves.hpp"
#include "oracles.hpp"

using namespace hsint;

namespace {

Grid1D reference_grid() { return build_grid(GridKind::HalfLineTruncated, 6.0, 201); }

HsState exact_initial_state(const Grid1D& g) {
    Field u0 = make_field(g);
    for (int i = 0; i <= g.count; ++i) u0[i] = hs_exact(g.node(i), 0.0);
    return make_hs_state(u0);
}

}  // namespace

TEST_CASE("zero data is a fixed point of every scheme") {
    const Grid1D g = build_grid(GridKind::HalfLineTruncated, 2.0, 16);
    HsState s = make_hs_state(make_field(g));
    const SolveConfig cfg;
    for (int k = 0; k < 3; ++k) {
        s = eb1_step(s, 0.01);
        for (double v : s.u.values) CHECK(v == 0.0);
        for (double v : s.v->values) CHECK(v == 0.0);
    }
    HsState s2 = make_hs_state(make_field(g));
    for (int k = 0; k < 3; ++k) {
        s2 = eb2_step(s2, 0.01);
        for (double v : s2.u.values) CHECK(v == 0.0);
    }
    HsState s3 = make_hs_state(make_field(g));
    s3 = h1_step(s3, 0.01, cfg);
    for (double v : s3.u.values) CHECK(v == 0.0);
    HsState s4 = make_hs_state(make_field(g));
    s4 = h2_step(s4, 0.01, cfg);
    for (double v : s4.u.values) CHECK(v == 0.0);
}

TEST_CASE("non-finite states are rejected") {
    const Grid1D g = build_grid(GridKind::HalfLineTruncated, 2.0, 16);
    Field bad = make_field(g);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_hs_state(bad), NumericsError);
    HsState s = make_hs_state(make_field(g));
    s.u[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(eb1_step(s, 0.01), NumericsError);
}

TEST_CASE("eb1 startup and leapfrog steps match the scalar-loop oracle") {
    const Grid1D g = reference_grid();
    const double dt = 0.01;
    HsState s = exact_initial_state(g);

    const std::vector<double> u0 = s.u.values;
    const std::vector<double> v0 = oracle::hs_slope(u0, g.dx);
    std::vector<double> v1, u1;
    oracle::eb1_update(u0, v0, {}, dt, g.dx, v1, u1);

    const HsState s1 = eb1_step(s, dt);
    CHECK(oracle::inf_diff(s1.u.values, u1) <= 1e-14);
    CHECK(oracle::inf_diff(s1.v->values, v1) <= 1e-14);

    std::vector<double> v2, u2;
    oracle::eb1_update(u1, v1, v0, dt, g.dx, v2, u2);
    const HsState s2 = eb1_step(s1, dt);
    CHECK(oracle::inf_diff(s2.u.values, u2) <= 1e-14);
    CHECK(oracle::inf_diff(s2.v->values, v2) <= 1e-14);
}

TEST_CASE("eb1 preserves the boundary data exactly") {
    const Grid1D g = reference_grid();
    HsState s = exact_initial_state(g);
    for (int k = 0; k < 20; ++k) {
        s = eb1_step(s, 0.01);
        CHECK(s.u[0] == 0.0);
        CHECK(s.u[1] == 0.0);  // u^1 = u^0
        CHECK((*s.v)[0] == 0.0);
        CHECK((*s.v)[g.count] == 0.0);
    }
}

TEST_CASE("eb1 keeps the first Hamiltonian flat at the reference resolution") {
    // The quadrature of the sampled initial data is resolution-dependent: the
    // kinks at x = 0 and x = 1 sit between nodes for dx = 12/201, which costs
    // 0.013 of the continuum value 0.5 (direct quadrature; node-aligned grids
    // such as N = 804 recover 0.5 exactly). The scheme quality statement is
    // that the value barely moves over the run.
    const Grid1D g = reference_grid();
    HsState s = exact_initial_state(g);
    const double h1_init = hs_invariants(s).first;
    CHECK(h1_init == doctest::Approx(0.486940).epsilon(1e-4));
    for (int k = 0; k < 50; ++k) {
        s = eb1_step(s, 0.01);
        const double h1 = hs_invariants(s).first;
        CHECK(std::abs(h1 - h1_init) <= 2e-3);
    }
}

TEST_CASE("eb2 startup and leapfrog steps match the scalar-loop oracle") {
    const Grid1D g = reference_grid();
    const double dt = 0.01;
    HsState s = exact_initial_state(g);

    const std::vector<double> u0 = s.u.values;
    const std::vector<double> v0 = oracle::hs_slope(u0, g.dx);
    std::vector<double> a0(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) a0[i] = v0[i] * v0[i];

    std::vector<double> u1, a1;
    oracle::eb2_update(u0, a0, {}, {}, dt, g.dx, u1, a1);
    const HsState s1 = eb2_step(s, dt);
    CHECK(oracle::inf_diff(s1.u.values, u1) <= 1e-14);
    CHECK(oracle::inf_diff(s1.alpha->values, a1) <= 1e-14);

    std::vector<double> u2, a2;
    oracle::eb2_update(u1, a1, u0, a0, dt, g.dx, u2, a2);
    const HsState s2 = eb2_step(s1, dt);
    CHECK(oracle::inf_diff(s2.u.values, u2) <= 1e-14);
    CHECK(oracle::inf_diff(s2.alpha->values, a2) <= 1e-14);
    CHECK(s2.u[0] == 0.0);
    CHECK((*s2.alpha)[0] == 0.0);
    CHECK((*s2.alpha)[g.count] == 0.0);
}

TEST_CASE("eb1 and eb2 produce nearby solutions at the reference resolution") {
    const Grid1D g = reference_grid();
    HsState a = exact_initial_state(g);
    HsState b = exact_initial_state(g);
    for (int k = 0; k < 50; ++k) {
        a = eb1_step(a, 0.01);
        b = eb2_step(b, 0.01);
    }
    CHECK(oracle::inf_diff(a.u.values, b.u.values) <= 0.05);
}

TEST_CASE("h1 conserves the discrete H1 and satisfies its equation") {
    const Grid1D g = reference_grid();
    const SolveConfig cfg;  // newton, tol 1e-12
    HsState s = exact_initial_state(g);
    const double h1_0 = hs_invariants(s).first;
    for (int k = 0; k < 10; ++k) {
        const HsState next = h1_step(s, 0.01, cfg);
        const auto res = oracle::h1_residual(s.u.values, next.u.values, 0.01, g.dx);
        CHECK(oracle::inf_norm(res) <= 1e-11);
        s = next;
        CHECK(std::abs(hs_invariants(s).first - h1_0) <=
              1e-9 * std::max(1.0, std::abs(h1_0)));
        CHECK(s.u[0] == 0.0);
    }
}

TEST_CASE("h2 satisfies its equation and the discrete H2 balance law") {
    const Grid1D g = reference_grid();
    const int n = g.count;
    const SolveConfig cfg;
    HsState s = exact_initial_state(g);
    for (int k = 0; k < 10; ++k) {
        const HsState next = h2_step(s, 0.01, cfg);
        const auto res = oracle::h2_residual(s.u.values, next.u.values, 0.01, g.dx);
        CHECK(oracle::inf_norm(res) <= 1e-11);

        // (H2^{i+1} - H2^i)/dt = (dt+ u^{N-1})(dt+ u^N)/2 + um^{N-1} vm^{N-1} (dt+ u^N)/2
        const double h2_old = oracle::hs_h2d(s.u.values, g.dx);
        const double h2_new = oracle::hs_h2d(next.u.values, g.dx);
        std::vector<double> um(s.u.values.size());
        for (std::size_t i = 0; i < um.size(); ++i)
            um[i] = 0.5 * (s.u.values[i] + next.u.values[i]);
        const auto vm = oracle::hs_slope(um, g.dx);
        const double dtN = (next.u[n] - s.u[n]) / 0.01;
        const double dtNm1 = (next.u[n - 1] - s.u[n - 1]) / 0.01;
        const double balance = 0.5 * dtNm1 * dtN + 0.5 * um[n - 1] * vm[n - 1] * dtN;
        CHECK(std::abs((h2_new - h2_old) / 0.01 - balance) <= 1e-9);
        s = next;
        CHECK(s.u[0] == 0.0);
    }
}

TEST_CASE("dxinv of zero vanishes and follows the even/odd table") {
    const Grid1D g = build_grid(GridKind::HalfLineTruncated, 1.0, 9);
    const Field zero = hs_dxinv(make_field(g));
    for (double v : zero.values) CHECK(v == 0.0);

    Field w = make_field(g);
    for (int i = 0; i <= 9; ++i) w[i] = i + 1.0;
    const Field anti = hs_dxinv(w);
    CHECK(anti[0] == 0.0);
    CHECK(anti[1] == 0.0);
    CHECK(anti[2] == doctest::Approx(2.0 * g.dx * w[1]));
    CHECK(anti[3] == doctest::Approx(2.0 * g.dx * w[2]));
    CHECK(anti[4] == doctest::Approx(2.0 * g.dx * (w[1] + w[3])));
    CHECK(anti[5] == doctest::Approx(2.0 * g.dx * (w[2] + w[4])));
    CHECK(anti[9] == doctest::Approx(2.0 * g.dx * (w[2] + w[4] + w[6] + w[8])));
}

TEST_CASE("discrete Hamiltonians on reference data") {
    const Grid1D g = reference_grid();
    HsState zero = make_hs_state(make_field(g));
    const auto [z1, z2] = hs_invariants(zero);
    CHECK(z1 == 0.0);
    CHECK(z2 == 0.0);

    Field ramp = make_field(g);
    for (int i = 0; i <= g.count; ++i) ramp[i] = g.node(i);
    HsState lin;
    lin.u = ramp;  // bypass make_hs_state: the linear profile is not boundary data
    const auto [l1, l2] = hs_invariants(lin);
    CHECK(l1 == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(std::abs(l2) <= 1e-12);

    // frozen from a direct quadrature of the sampled exact solution; the
    // continuum values are 0.5 and 0.25, approached as the grid refines
    // (0.5/0.248 at N = 804) but off by the kink-cell error at N = 201
    const HsState init = exact_initial_state(g);
    const auto [h1, h2] = hs_invariants(init);
    CHECK(h1 == doctest::Approx(0.486940).epsilon(1e-4));
    CHECK(h2 == doctest::Approx(0.239676).epsilon(1e-4));
    CHECK(std::abs(h1 - 0.5) <= 0.014);
    CHECK(std::abs(h2 - 0.25) <= 0.011);

    // direct-sum oracle agreement
    CHECK(h1 == doctest::Approx(oracle::hs_h1d(init.u.values, g.dx)).epsilon(1e-13));
    CHECK(h2 == doctest::Approx(oracle::hs_h2d(init.u.values, g.dx)).epsilon(1e-13));
}
