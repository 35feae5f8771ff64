#include "hsint/schemes_hs.hpp"

#include <cmath>

namespace hsint {

namespace {

void require_halfline(const Field& u, const char* who) {
    if (u.grid.kind != GridKind::HalfLineTruncated)
        throw std::invalid_argument(std::string(who) + ": half-line grids only");
}

void require_finite(const Field& f, const char* who) {
    if (!f.all_finite()) throw NumericsError(std::string(who) + ": non-finite field");
}

// u from v by inverting the centered difference: u^{n+1} = u^{n-1} + 2 dx v^n,
// seeded u^0 = u^1 = 0.
Field reconstruct_u(const Field& v) {
    const int n = v.grid.count;
    const double dx = v.grid.dx;
    Field u = make_field(v.grid);
    u[0] = 0.0;
    u[1] = 0.0;
    for (int i = 1; i < n; ++i) u[i + 1] = u[i - 1] + 2.0 * dx * v[i];
    return u;
}

// W = delta_x P from -delta_x W = alpha/2, seeded W^0 = W^1 = 0
// (discrete P_x(-L) = 0 on both sublattices).
Field pressure_gradient(const Field& alpha) {
    const int n = alpha.grid.count;
    const double dx = alpha.grid.dx;
    Field w = make_field(alpha.grid);
    w[0] = 0.0;
    w[1] = 0.0;
    for (int i = 1; i < n; ++i) w[i + 1] = w[i - 1] - dx * alpha[i];
    return w;
}

Field pressure_from_gradient(const Field& w) {
    const int n = w.grid.count;
    const double dx = w.grid.dx;
    Field p = make_field(w.grid);
    p[0] = 0.0;
    p[1] = 0.0;
    for (int i = 1; i < n; ++i) p[i + 1] = p[i - 1] + 2.0 * dx * w[i];
    return p;
}

// Ghost-extended long-double buffer for the implicit half-line residuals.
// The second differences suffer heavy cancellation against 1/dx^2, so the
// residual is assembled in extended precision; the Newton unknowns stay
// double. Ghosts: f^{-1} = f^1, f^{N+1} = f^{N-1}, f^{N+2} = 2 f^N - f^{N-2}.
struct LdBuffer {
    std::vector<long double> buf;  // layout [-2 .. N+2], offset 2
    int n;
    explicit LdBuffer(int count) : buf(static_cast<std::size_t>(count + 5), 0.0L), n(count) {}
    long double& at(int i) { return buf[static_cast<std::size_t>(i + 2)]; }
    long double at(int i) const { return buf[static_cast<std::size_t>(i + 2)]; }
    void fill_ghosts() {
        at(-1) = at(1);
        at(n + 1) = at(n - 1);
        at(n + 2) = 2.0L * at(n) - at(n - 2);
    }
};

}  // namespace

HsState make_hs_state(const Field& u0) {
    require_halfline(u0, "make_hs_state");
    require_finite(u0, "make_hs_state");
    HsState s;
    s.t = 0.0;
    s.u = u0;
    s.u[0] = 0.0;
    return s;
}

Field hs_slope_field(const Field& u) {
    require_halfline(u, "hs_slope_field");
    const int n = u.grid.count;
    Field v = make_field(u.grid);
    for (int i = 1; i < n; ++i) v[i] = (u[i + 1] - u[i - 1]) / (2.0 * u.grid.dx);
    v[0] = 0.0;
    v[n] = 0.0;
    return v;
}

Field hs_dxinv(const Field& w) {
    require_halfline(w, "hs_dxinv");
    const int n = w.grid.count;
    const double dx = w.grid.dx;
    Field out = make_field(w.grid);
    double odd_sum = 0.0;   // w^1 + w^3 + ...
    double even_sum = 0.0;  // w^2 + w^4 + ...
    for (int i = 2; i <= n; ++i) {
        if (i % 2 == 0) {
            odd_sum += w[i - 1];
            out[i] = 2.0 * dx * odd_sum;
        } else {
            even_sum += w[i - 1];
            out[i] = 2.0 * dx * even_sum;
        }
    }
    return out;
}

HsState eb1_step(const HsState& state, double dt) {
    require_halfline(state.u, "eb1_step");
    require_finite(state.u, "eb1_step");
    const int n = state.u.grid.count;
    const double dx = state.u.grid.dx;

    const Field v_now = state.v ? *state.v : hs_slope_field(state.u);
    const Field& u_now = state.u;

    Field v_next = make_field(state.u.grid);
    const bool leapfrog = state.v_prev.has_value();
    const double step = leapfrog ? 2.0 * dt : dt;
    for (int i = 1; i < n; ++i) {
        const double rhs = 0.5 * v_now[i] * v_now[i] -
                           (u_now[i + 1] * v_now[i + 1] - u_now[i - 1] * v_now[i - 1]) /
                               (2.0 * dx);
        v_next[i] = (leapfrog ? (*state.v_prev)[i] : v_now[i]) + step * rhs;
    }
    v_next[0] = 0.0;
    v_next[n] = 0.0;

    HsState out;
    out.t = state.t + dt;
    out.u = reconstruct_u(v_next);
    out.v = std::move(v_next);
    out.v_prev = v_now;
    require_finite(out.u, "eb1_step");
    return out;
}

HsState eb2_step(const HsState& state, double dt) {
    require_halfline(state.u, "eb2_step");
    require_finite(state.u, "eb2_step");
    const int n = state.u.grid.count;
    const double dx = state.u.grid.dx;

    Field alpha_now;
    if (state.alpha) {
        alpha_now = *state.alpha;
    } else {
        const Field v = hs_slope_field(state.u);
        alpha_now = make_field(state.u.grid);
        for (int i = 0; i <= n; ++i) alpha_now[i] = v[i] * v[i];
    }
    const Field& u_now = state.u;
    const Field w = pressure_gradient(alpha_now);

    const bool leapfrog = state.alpha_prev.has_value() && state.u_prev.has_value();
    const double step = leapfrog ? 2.0 * dt : dt;

    Field alpha_next = make_field(state.u.grid);
    for (int i = 1; i < n; ++i) {
        const double flux = (u_now[i + 1] * alpha_now[i + 1] -
                             u_now[i - 1] * alpha_now[i - 1]) /
                            (2.0 * dx);
        alpha_next[i] = (leapfrog ? (*state.alpha_prev)[i] : alpha_now[i]) - step * flux;
    }
    alpha_next[0] = 0.0;
    alpha_next[n] = 0.0;

    Field u_next = make_field(state.u.grid);
    const Field& u_base = leapfrog ? *state.u_prev : u_now;
    for (int i = 1; i <= n; ++i) {
        // ghost u^{N+1} = u^{N-1} makes delta_x(u^2) vanish at n = N
        const double up = (i == n) ? u_now[n - 1] : u_now[i + 1];
        const double adv = 0.5 * (up * up - u_now[i - 1] * u_now[i - 1]) / (2.0 * dx);
        u_next[i] = u_base[i] - step * (adv + w[i]);
    }
    u_next[0] = 0.0;

    HsState out;
    out.t = state.t + dt;
    out.u = std::move(u_next);
    out.alpha = std::move(alpha_next);
    out.p = pressure_from_gradient(pressure_gradient(*out.alpha));
    out.alpha_prev = std::move(alpha_now);
    out.u_prev = u_now;
    require_finite(out.u, "eb2_step");
    require_finite(*out.alpha, "eb2_step");
    return out;
}

HsState h1_step(const HsState& state, double dt, const SolveConfig& cfg) {
    require_halfline(state.u, "h1_step");
    require_finite(state.u, "h1_step");
    const int n = state.u.grid.count;
    const long double dx = state.u.grid.dx;
    const long double dx2 = dx * dx;
    const Field& u_old = state.u;

    // Newton unknown is the increment x = delta_t^+ u at nodes 1..N; the
    // previous-level predictor is x = 0. This keeps the residual floor far
    // below the tolerance, unlike solving for u^{i+1} directly, whose
    // one-ulp granularity exceeds 1e-12 through the 1/(dt dx^2) factor.
    auto residual = [&](const std::vector<double>& x) {
        LdBuffer d(n), um(n);
        d.at(0) = 0.0L;
        um.at(0) = 0.0L;
        for (int i = 1; i <= n; ++i) {
            d.at(i) = x[static_cast<std::size_t>(i - 1)];
            um.at(i) = static_cast<long double>(u_old[i]) +
                       0.5L * dt * x[static_cast<std::size_t>(i - 1)];
        }
        d.fill_ghosts();
        um.fill_ghosts();
        auto lap = [&](const LdBuffer& f, int i) {
            return (f.at(i + 1) - 2.0L * f.at(i) + f.at(i - 1)) / dx2;
        };
        std::vector<double> r(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            const long double slope = (um.at(i + 1) - um.at(i - 1)) / (2.0L * dx);
            const long double flux =
                (um.at(i + 1) * lap(um, i + 1) - um.at(i - 1) * lap(um, i - 1)) /
                (2.0L * dx);
            r[static_cast<std::size_t>(i - 1)] =
                static_cast<double>(lap(d, i) + lap(um, i) * slope + flux);
        }
        return r;
    };

    std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
    auto [x, report] = solve(residual, std::move(x0), cfg);

    HsState out;
    out.t = state.t + dt;
    out.u = make_field(u_old.grid);
    out.u[0] = 0.0;
    for (int i = 1; i <= n; ++i) out.u[i] = u_old[i] + dt * x[static_cast<std::size_t>(i - 1)];
    require_finite(out.u, "h1_step");
    return out;
}

HsState h2_step(const HsState& state, double dt, const SolveConfig& cfg) {
    require_halfline(state.u, "h2_step");
    require_finite(state.u, "h2_step");
    const int n = state.u.grid.count;
    const long double dx = state.u.grid.dx;
    const Field& u_old = state.u;

    // v = delta_x u with v^0 = v^N = 0, in extended precision
    auto slope_of = [&](const LdBuffer& u) {
        std::vector<long double> v(static_cast<std::size_t>(n + 1), 0.0L);
        for (int i = 1; i < n; ++i)
            v[static_cast<std::size_t>(i)] = (u.at(i + 1) - u.at(i - 1)) / (2.0L * dx);
        return v;
    };

    std::vector<long double> v_old;
    {
        LdBuffer uo(n);
        for (int i = 0; i <= n; ++i) uo.at(i) = u_old[i];
        v_old = slope_of(uo);
    }

    // unknowns are the increments x = delta_t^+ u at nodes 1..N
    auto residual = [&](const std::vector<double>& x) {
        LdBuffer un(n), um(n);
        un.at(0) = 0.0L;
        um.at(0) = 0.0L;
        for (int i = 1; i <= n; ++i) {
            un.at(i) = static_cast<long double>(u_old[i]) + static_cast<long double>(dt) * x[static_cast<std::size_t>(i - 1)];
            um.at(i) = static_cast<long double>(u_old[i]) +
                       0.5L * dt * x[static_cast<std::size_t>(i - 1)];
        }
        const std::vector<long double> v_new = slope_of(un);
        const std::vector<long double> vm = slope_of(um);

        // the even/odd cumulative sum of w = (v_new^2 + v_old^2)/4
        std::vector<long double> anti(static_cast<std::size_t>(n + 1), 0.0L);
        long double odd_sum = 0.0L, even_sum = 0.0L;
        auto w_at = [&](int i) {
            return 0.25L * (v_new[static_cast<std::size_t>(i)] * v_new[static_cast<std::size_t>(i)] +
                            v_old[static_cast<std::size_t>(i)] * v_old[static_cast<std::size_t>(i)]);
        };
        for (int i = 2; i <= n; ++i) {
            if (i % 2 == 0) {
                odd_sum += w_at(i - 1);
                anti[static_cast<std::size_t>(i)] = 2.0L * dx * odd_sum;
            } else {
                even_sum += w_at(i - 1);
                anti[static_cast<std::size_t>(i)] = 2.0L * dx * even_sum;
            }
        }

        std::vector<double> r(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i)
            r[static_cast<std::size_t>(i - 1)] = static_cast<double>(
                x[static_cast<std::size_t>(i - 1)] +
                um.at(i) * vm[static_cast<std::size_t>(i)] - anti[static_cast<std::size_t>(i)]);
        return r;
    };

    std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
    auto [x, report] = solve(residual, std::move(x0), cfg);

    HsState out;
    out.t = state.t + dt;
    out.u = make_field(u_old.grid);
    out.u[0] = 0.0;
    for (int i = 1; i <= n; ++i) out.u[i] = u_old[i] + dt * x[static_cast<std::size_t>(i - 1)];
    require_finite(out.u, "h2_step");
    return out;
}

std::pair<double, double> hs_invariants(const HsState& state) {
    require_halfline(state.u, "hs_invariants");
    const int n = state.u.grid.count;
    const ExtendedField u = extend_halfline_ghosts(state.u, hs_scheme_ghosts(n));
    const double dx = state.u.grid.dx;
    Field e1 = make_field(state.u.grid);
    Field e2 = make_field(state.u.grid);
    for (int i = 0; i <= n; ++i) {
        const double fwd = (u.at(i + 1) - u.at(i)) / dx;
        const double bwd = (u.at(i) - u.at(i - 1)) / dx;
        const double ctr = (u.at(i + 1) - u.at(i - 1)) / (2.0 * dx);
        e1[i] = 0.25 * (fwd * fwd + bwd * bwd);
        e2[i] = 0.5 * u.at(i) * ctr * ctr;
    }
    return {trapz_doubleprime(e1), trapz_doubleprime(e2)};
}

}  // namespace hsint
