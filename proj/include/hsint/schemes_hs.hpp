/// @file schemes_hs.hpp
/// @brief Half-line HS solvers on [-L, L]: two explicit Euler box schemes and
/// two implicit Hamiltonian-preserving schemes.
///
/// Boundary treatment (all schemes): u^0 = 0 always. The explicit eb1 scheme
/// evolves v := delta_x u with v^0 = v^N = 0 and reconstructs u through the
/// parity recursion u^{n+1} = u^{n-1} + 2 dx v^n seeded by u^0 = u^1 = 0.
/// The implicit schemes use the ghost rules u^{-1} = u^1, u^{N+1} = u^{N-1},
/// u^{N+2} = 2 u^N - u^{N-2} (discrete u_x(-L) = u_x(L) = u_xx(L) = 0).
///
/// eb1 (leapfrog in time, n = 1..N-1):
///   delta_t v = (v^n)^2 / 2 - delta_x(u v)
/// eb2 (leapfrog, auxiliary energy density alpha = u_x^2):
///   delta_t alpha + delta_x(u alpha) = 0
///   -delta_x^2 P    = alpha / 2           (wide stencil; solved via W = delta_x P)
///   delta_t u + delta_x(u^2)/2 + delta_x P = 0
/// h1 (midpoint, conserves H_{1,d} by construction, n = 1..N):
///   tdel2 delta_t^+ u = -(tdel2 um)(delta_x um) - delta_x(um tdel2 um)
/// h2 (midpoint, discrete H_2 balance law, n = 1..N):
///   delta_t^+ u = -um vm + dxinv((v_new^2 + v_old^2)/4)
/// where um is the time midpoint, tdel2 the narrow second difference, and
/// dxinv the even/odd cumulative sum discretisation of int_{-L}^x.

#pragma once

#include <optional>
#include <utility>

#include "hsint/grid.hpp"
#include "hsint/solver.hpp"

namespace hsint {

struct HsState {
    double t = 0.0;
    Field u;
    // eb1 leapfrog data
    std::optional<Field> v;
    std::optional<Field> v_prev;
    // eb2 leapfrog data
    std::optional<Field> alpha;
    std::optional<Field> p;
    std::optional<Field> alpha_prev;
    std::optional<Field> u_prev;
};

struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fresh state at t = 0 (u^0 forced to zero to match the boundary data).
HsState make_hs_state(const Field& u0);

/// Explicit Euler box scheme on the first multi-symplectic formulation.
/// First call performs the forward (delta_t^+) startup step.
HsState eb1_step(const HsState& state, double dt);

/// Explicit Euler box scheme on the second multi-symplectic formulation
/// (u, alpha, P). First call initialises alpha = (delta_x u)^2 and starts
/// with a forward step.
HsState eb2_step(const HsState& state, double dt);

/// Implicit H1-preserving scheme; solves the N-equation midpoint system.
HsState h1_step(const HsState& state, double dt, const SolveConfig& cfg);

/// Implicit scheme with the discrete H2 balance law.
HsState h2_step(const HsState& state, double dt, const SolveConfig& cfg);

/// Discrete Hamiltonians via the double-prime trapezoid:
/// H_{1,d} = sum'' (dx/2) ((d+ u)^2 + (d- u)^2)/2,
/// H_{2,d} = sum'' (dx/2) u (delta_x u)^2,
/// ghosts from hs_scheme_ghosts.
std::pair<double, double> hs_invariants(const HsState& state);

/// v = delta_x u with v^0 = v^N = 0 (the eb1/h2 auxiliary variable).
Field hs_slope_field(const Field& u);

/// Even/odd cumulative-sum discretisation of int_{-L}^x w:
/// 0 at n = 0, 1; 2 dx (w^1 + w^3 + ... + w^{2m-1}) at n = 2m;
/// 2 dx (w^2 + w^4 + ... + w^{2m}) at n = 2m+1.
Field hs_dxinv(const Field& w);

}  // namespace hsint
