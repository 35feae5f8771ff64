/// @file schemes_mhs.hpp
/// @brief Periodic mHS solvers: the explicit multi-symplectic scheme with the
/// wide-stencil pseudo-inverse and the implicit H1-preserving scheme with the
/// narrow-stencil pseudo-inverse.
///
/// ms (leapfrog):
///   u^{i+1} = u^{i-1} + 2 dt (delta_x^2)^+ [ delta_x((delta_x u)^2)/2
///             - delta_x^2(u delta_x u) + 2 omega delta_x u ]      at level i
/// h1 (midpoint):
///   delta_t^+ u + (tdel2)^+ [ (tdel2 um)(delta_x um)
///             + delta_x(um tdel2 um) - 2 omega delta_x um ] = 0
/// Both conserve the discrete mean of u exactly (pseudo-inverse output has no
/// kernel component).

#pragma once

#include <optional>
#include <utility>

#include "hsint/grid.hpp"
#include "hsint/pinv.hpp"
#include "hsint/schemes_hs.hpp"  // NumericsError
#include "hsint/solver.hpp"

namespace hsint {

struct MhsState {
    double t = 0.0;
    Field u;                      // periodic
    double omega = 0.0;           // > 0
    std::optional<Field> u_prev;  // leapfrog history (ms scheme)
};

MhsState make_mhs_state(const Field& u0, double omega);

/// Explicit multi-symplectic step; pinv must be the wide-stencil operator on
/// the state's grid. First call performs the forward startup step.
MhsState mhs_ms_step(const MhsState& state, double dt, const CirculantPinv& pinv);

/// Implicit H1-preserving step; pinv must be the narrow-stencil operator.
MhsState mhs_h1_step(const MhsState& state, double dt, const CirculantPinv& pinv,
                     const SolveConfig& cfg);

/// H_{1,d} = sum dx (d+ u)^2 / 2,
/// H_{2,d} = sum dx (u (d+ u)^2 + 2 omega u^2) / 2.
std::pair<double, double> mhs_invariants(const MhsState& state);

}  // namespace hsint
