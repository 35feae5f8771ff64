#include "hsint/schemes_mhs.hpp"

namespace hsint {

namespace {

void require_periodic(const Field& u, const char* who) {
    if (u.grid.kind != GridKind::Periodic)
        throw std::invalid_argument(std::string(who) + ": periodic grids only");
}

void require_finite(const Field& f, const char* who) {
    if (!f.all_finite()) throw NumericsError(std::string(who) + ": non-finite field");
}

void require_pinv(const CirculantPinv& pinv, const Grid1D& grid, StencilKind kind,
                  const char* who) {
    if (!(pinv.grid() == grid) || pinv.stencil_kind() != kind)
        throw std::invalid_argument(std::string(who) + ": pseudo-inverse mismatch");
}

// delta_x((delta_x u)^2)/2 - delta_x^2(u delta_x u) + 2 omega delta_x u
Field mhs_ms_forcing(const Field& u, double omega) {
    const int n = u.grid.count;
    const Field ux = apply_difference(u, DiffKind::Centered);
    Field sq = make_field(u.grid);
    Field uux = make_field(u.grid);
    for (int i = 0; i < n; ++i) {
        sq[i] = ux[i] * ux[i];
        uux[i] = u[i] * ux[i];
    }
    const Field dsq = apply_difference(sq, DiffKind::Centered);
    const Field d2uux = apply_difference(uux, DiffKind::WideSecond);
    Field g = make_field(u.grid);
    for (int i = 0; i < n; ++i) g[i] = 0.5 * dsq[i] - d2uux[i] + 2.0 * omega * ux[i];
    return g;
}

// Midpoint forcing (tdel2 um)(delta_x um) + delta_x(um tdel2 um)
// - 2 omega delta_x um with um = u_old + (dt/2) d, assembled in extended
// precision (the narrow second difference loses ~dx^-2 digits otherwise).
Field mhs_h1_forcing_mid(const Field& u_old, const std::vector<double>& d, double dt,
                         double omega) {
    const int n = u_old.grid.count;
    const long double dx = u_old.grid.dx;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    std::vector<long double> um(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        um[static_cast<std::size_t>(i)] =
            static_cast<long double>(u_old[i]) + 0.5L * dt * d[static_cast<std::size_t>(i)];
    auto lap = [&](int i) {
        return (um[static_cast<std::size_t>(wrap(i + 1))] - 2.0L * um[static_cast<std::size_t>(i)] +
                um[static_cast<std::size_t>(wrap(i - 1))]) /
               (dx * dx);
    };
    auto val = [&](int i) { return um[static_cast<std::size_t>(wrap(i))]; };
    Field b = make_field(u_old.grid);
    for (int i = 0; i < n; ++i) {
        const long double slope = (val(i + 1) - val(i - 1)) / (2.0L * dx);
        const long double flux =
            (val(i + 1) * lap(wrap(i + 1)) - val(i - 1) * lap(wrap(i - 1))) / (2.0L * dx);
        b[i] = static_cast<double>(lap(i) * slope + flux - 2.0L * omega * slope);
    }
    return b;
}

}  // namespace

MhsState make_mhs_state(const Field& u0, double omega) {
    require_periodic(u0, "make_mhs_state");
    require_finite(u0, "make_mhs_state");
    if (!(omega > 0.0)) throw std::invalid_argument("make_mhs_state: omega must be > 0");
    MhsState s;
    s.u = u0;
    s.omega = omega;
    return s;
}

MhsState mhs_ms_step(const MhsState& state, double dt, const CirculantPinv& pinv) {
    require_periodic(state.u, "mhs_ms_step");
    require_finite(state.u, "mhs_ms_step");
    require_pinv(pinv, state.u.grid, StencilKind::WideSecond, "mhs_ms_step");

    const Field g = pinv.apply(mhs_ms_forcing(state.u, state.omega));
    const bool leapfrog = state.u_prev.has_value();
    const double step = leapfrog ? 2.0 * dt : dt;
    const Field& base = leapfrog ? *state.u_prev : state.u;

    MhsState out;
    out.t = state.t + dt;
    out.omega = state.omega;
    out.u = make_field(state.u.grid);
    for (int i = 0; i < state.u.grid.count; ++i) out.u[i] = base[i] + step * g[i];
    out.u_prev = state.u;
    require_finite(out.u, "mhs_ms_step");
    return out;
}

MhsState mhs_h1_step(const MhsState& state, double dt, const CirculantPinv& pinv,
                     const SolveConfig& cfg) {
    require_periodic(state.u, "mhs_h1_step");
    require_finite(state.u, "mhs_h1_step");
    require_pinv(pinv, state.u.grid, StencilKind::NarrowSecond, "mhs_h1_step");
    const int n = state.u.grid.count;
    const Field& u_old = state.u;
    const double omega = state.omega;

    // Newton unknown is the increment x = delta_t^+ u; the forcing is
    // assembled in extended precision before the pseudo-inverse so the
    // second-difference cancellation noise stays below the tolerance.
    auto residual = [&](const std::vector<double>& x) {
        const Field b = mhs_h1_forcing_mid(u_old, x, dt, omega);
        const Field g = pinv.apply(b);
        std::vector<double> r(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + g[i];
        return r;
    };

    std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
    auto [x, report] = solve(residual, std::move(x0), cfg);

    MhsState out;
    out.t = state.t + dt;
    out.omega = omega;
    out.u = make_field(u_old.grid);
    for (int i = 0; i < n; ++i) out.u[i] = u_old[i] + dt * x[static_cast<std::size_t>(i)];
    require_finite(out.u, "mhs_h1_step");
    return out;
}

std::pair<double, double> mhs_invariants(const MhsState& state) {
    require_periodic(state.u, "mhs_invariants");
    const int n = state.u.grid.count;
    const double dx = state.u.grid.dx;
    const Field fwd = apply_difference(state.u, DiffKind::Forward);
    double h1 = 0.0, h2 = 0.0;
    for (int i = 0; i < n; ++i) {
        h1 += 0.5 * fwd[i] * fwd[i];
        h2 += 0.5 * (state.u[i] * fwd[i] * fwd[i] +
                     2.0 * state.omega * state.u[i] * state.u[i]);
    }
    return {h1 * dx, h2 * dx};
}

}  // namespace hsint
