/// @file schemes_2hs.hpp
/// @brief Periodic two-component HS solvers for the coupled (u, rho) system.
///
/// ms (leapfrog):
///   u^{i+1}   = u^{i-1} + 2 dt (delta_x^2)^+ [ delta_x((delta_x u)^2)/2
///               - delta_x^2(u delta_x u) + (kappa/2) delta_x(rho^2) ]
///   rho^{i+1} = rho^{i-1} - 2 dt delta_x(u rho)
/// h1 (midpoint, coupled Newton solve over the stacked unknowns):
///   delta_t^+ u   + (tdel2)^+ [ (tdel2 um)(delta_x um) + delta_x(um tdel2 um)
///                   - kappa rhom delta_x rhom ] = 0
///   delta_t^+ rho + delta_x(um rhom) = 0
/// The h1 scheme conserves H_{1,d} = sum dx ((d+ u)^2 + kappa rho^2)/2 and
/// both schemes conserve sum rho exactly (discrete divergence form).

#pragma once

#include <optional>
#include <utility>

#include "hsint/grid.hpp"
#include "hsint/pinv.hpp"
#include "hsint/schemes_hs.hpp"  // NumericsError
#include "hsint/solver.hpp"

namespace hsint {

struct Hs2State {
    double t = 0.0;
    Field u;    // periodic
    Field rho;  // periodic, same grid
    int kappa = 1;
    std::optional<Field> u_prev;
    std::optional<Field> rho_prev;
};

Hs2State make_hs2_state(const Field& u0, const Field& rho0, int kappa);

/// Explicit multi-symplectic step; pinv must be the wide-stencil operator.
Hs2State hs2_ms_step(const Hs2State& state, double dt, const CirculantPinv& pinv);

/// Implicit H1-preserving step; pinv must be the narrow-stencil operator.
Hs2State hs2_h1_step(const Hs2State& state, double dt, const CirculantPinv& pinv,
                     const SolveConfig& cfg);

/// H_{1,d} = sum dx ((d+ u)^2 + kappa rho^2)/2,
/// H_{2,d} = sum dx (kappa u rho^2 + u (d+ u)^2)/2.
std::pair<double, double> hs2_invariants(const Hs2State& state);

}  // namespace hsint
