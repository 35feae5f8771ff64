#include "hsint/schemes_2hs.hpp"

namespace hsint {

namespace {

void require_state(const Hs2State& s, const char* who) {
    if (s.u.grid.kind != GridKind::Periodic)
        throw std::invalid_argument(std::string(who) + ": periodic grids only");
    if (!(s.rho.grid == s.u.grid))
        throw std::invalid_argument(std::string(who) + ": u and rho grids differ");
    if (s.kappa != 1 && s.kappa != -1)
        throw std::invalid_argument(std::string(who) + ": kappa must be +1 or -1");
    if (!s.u.all_finite() || !s.rho.all_finite())
        throw NumericsError(std::string(who) + ": non-finite field");
}

void require_pinv(const CirculantPinv& pinv, const Grid1D& grid, StencilKind kind,
                  const char* who) {
    if (!(pinv.grid() == grid) || pinv.stencil_kind() != kind)
        throw std::invalid_argument(std::string(who) + ": pseudo-inverse mismatch");
}

// delta_x((delta_x u)^2)/2 - delta_x^2(u delta_x u) + (kappa/2) delta_x(rho^2)
Field hs2_ms_forcing(const Field& u, const Field& rho, int kappa) {
    const int n = u.grid.count;
    const Field ux = apply_difference(u, DiffKind::Centered);
    Field sq = make_field(u.grid);
    Field uux = make_field(u.grid);
    Field rho2 = make_field(u.grid);
    for (int i = 0; i < n; ++i) {
        sq[i] = ux[i] * ux[i];
        uux[i] = u[i] * ux[i];
        rho2[i] = rho[i] * rho[i];
    }
    const Field dsq = apply_difference(sq, DiffKind::Centered);
    const Field d2uux = apply_difference(uux, DiffKind::WideSecond);
    const Field drho2 = apply_difference(rho2, DiffKind::Centered);
    Field g = make_field(u.grid);
    for (int i = 0; i < n; ++i)
        g[i] = 0.5 * dsq[i] - d2uux[i] + 0.5 * kappa * drho2[i];
    return g;
}

// Midpoint forcing (tdel2 um)(delta_x um) + delta_x(um tdel2 um)
// - kappa rhom delta_x rhom, assembled in extended precision from the
// increments (du, drho).
Field hs2_h1_forcing_mid(const Field& u_old, const Field& rho_old,
                         const std::vector<double>& d, double dt, int kappa) {
    const int n = u_old.grid.count;
    const long double dx = u_old.grid.dx;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    std::vector<long double> um(static_cast<std::size_t>(n)), rhom(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        um[static_cast<std::size_t>(i)] =
            static_cast<long double>(u_old[i]) + 0.5L * dt * d[static_cast<std::size_t>(i)];
        rhom[static_cast<std::size_t>(i)] =
            static_cast<long double>(rho_old[i]) + 0.5L * dt * d[static_cast<std::size_t>(n + i)];
    }
    auto lap = [&](int i) {
        return (um[static_cast<std::size_t>(wrap(i + 1))] - 2.0L * um[static_cast<std::size_t>(i)] +
                um[static_cast<std::size_t>(wrap(i - 1))]) /
               (dx * dx);
    };
    auto uval = [&](int i) { return um[static_cast<std::size_t>(wrap(i))]; };
    auto rval = [&](int i) { return rhom[static_cast<std::size_t>(wrap(i))]; };
    Field b = make_field(u_old.grid);
    for (int i = 0; i < n; ++i) {
        const long double slope = (uval(i + 1) - uval(i - 1)) / (2.0L * dx);
        const long double flux =
            (uval(i + 1) * lap(wrap(i + 1)) - uval(i - 1) * lap(wrap(i - 1))) /
            (2.0L * dx);
        const long double rslope = (rval(i + 1) - rval(i - 1)) / (2.0L * dx);
        b[i] = static_cast<double>(lap(i) * slope + flux -
                                   static_cast<long double>(kappa) * rval(i) * rslope);
    }
    return b;
}

}  // namespace

Hs2State make_hs2_state(const Field& u0, const Field& rho0, int kappa) {
    Hs2State s;
    s.u = u0;
    s.rho = rho0;
    s.kappa = kappa;
    require_state(s, "make_hs2_state");
    return s;
}

Hs2State hs2_ms_step(const Hs2State& state, double dt, const CirculantPinv& pinv) {
    require_state(state, "hs2_ms_step");
    require_pinv(pinv, state.u.grid, StencilKind::WideSecond, "hs2_ms_step");
    const int n = state.u.grid.count;

    const Field g = pinv.apply(hs2_ms_forcing(state.u, state.rho, state.kappa));
    Field urho = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) urho[i] = state.u[i] * state.rho[i];
    const Field flux = apply_difference(urho, DiffKind::Centered);

    const bool leapfrog = state.u_prev.has_value() && state.rho_prev.has_value();
    const double step = leapfrog ? 2.0 * dt : dt;
    const Field& u_base = leapfrog ? *state.u_prev : state.u;
    const Field& rho_base = leapfrog ? *state.rho_prev : state.rho;

    Hs2State out;
    out.t = state.t + dt;
    out.kappa = state.kappa;
    out.u = make_field(state.u.grid);
    out.rho = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) {
        out.u[i] = u_base[i] + step * g[i];
        out.rho[i] = rho_base[i] - step * flux[i];
    }
    out.u_prev = state.u;
    out.rho_prev = state.rho;
    if (!out.u.all_finite() || !out.rho.all_finite())
        throw NumericsError("hs2_ms_step: non-finite result");
    return out;
}

Hs2State hs2_h1_step(const Hs2State& state, double dt, const CirculantPinv& pinv,
                     const SolveConfig& cfg) {
    require_state(state, "hs2_h1_step");
    require_pinv(pinv, state.u.grid, StencilKind::NarrowSecond, "hs2_h1_step");
    const int n = state.u.grid.count;
    const Field& u_old = state.u;
    const Field& rho_old = state.rho;
    const int kappa = state.kappa;

    // unknown vector is the stacked increment (delta_t^+ u, delta_t^+ rho)
    auto residual = [&](const std::vector<double>& x) {
        const Field b = hs2_h1_forcing_mid(u_old, rho_old, x, dt, kappa);
        const Field g = pinv.apply(b);
        auto wrap = [n](int i) { return ((i % n) + n) % n; };
        const long double dx = u_old.grid.dx;
        std::vector<long double> umrhom(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const long double um = static_cast<long double>(u_old[i]) +
                                   0.5L * dt * x[static_cast<std::size_t>(i)];
            const long double rm = static_cast<long double>(rho_old[i]) +
                                   0.5L * dt * x[static_cast<std::size_t>(n + i)];
            umrhom[static_cast<std::size_t>(i)] = um * rm;
        }
        std::vector<double> r(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            r[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + g[i];
            const long double flux = (umrhom[static_cast<std::size_t>(wrap(i + 1))] -
                                      umrhom[static_cast<std::size_t>(wrap(i - 1))]) /
                                     (2.0L * dx);
            r[static_cast<std::size_t>(n + i)] =
                static_cast<double>(x[static_cast<std::size_t>(n + i)] + flux);
        }
        return r;
    };

    std::vector<double> x0(static_cast<std::size_t>(2 * n), 0.0);
    auto [x, report] = solve(residual, std::move(x0), cfg);

    Hs2State out;
    out.t = state.t + dt;
    out.kappa = kappa;
    out.u = make_field(u_old.grid);
    out.rho = make_field(u_old.grid);
    for (int i = 0; i < n; ++i) {
        out.u[i] = u_old[i] + dt * x[static_cast<std::size_t>(i)];
        out.rho[i] = rho_old[i] + dt * x[static_cast<std::size_t>(n + i)];
    }
    if (!out.u.all_finite() || !out.rho.all_finite())
        throw NumericsError("hs2_h1_step: non-finite result");
    return out;
}

std::pair<double, double> hs2_invariants(const Hs2State& state) {
    require_state(state, "hs2_invariants");
    const int n = state.u.grid.count;
    const double dx = state.u.grid.dx;
    const Field fwd = apply_difference(state.u, DiffKind::Forward);
    double h1 = 0.0, h2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double rr = state.rho[i] * state.rho[i];
        h1 += 0.5 * (fwd[i] * fwd[i] + state.kappa * rr);
        h2 += 0.5 * (state.kappa * state.u[i] * rr + state.u[i] * fwd[i] * fwd[i]);
    }
    return {h1 * dx, h2 * dx};
}

}  // namespace hsint
