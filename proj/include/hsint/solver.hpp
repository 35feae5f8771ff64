/// @file solver.hpp
/// @brief Nonlinear solve engine for the implicit time steps: fixed-point
/// iteration and Newton with a dense finite-difference Jacobian.
///
/// All systems solved here have N <= ~1000 unknowns, so a dense Jacobian and
/// LU factorisation are adequate. The default tolerance is tight (1e-12)
/// because the discrete-conservation checks downstream need the implicit
/// equations solved essentially to rounding; Newton's terminal residual
/// typically lands far below the tolerance.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsint {

enum class SolveMethod { FixedPoint, NewtonFd };

struct SolveConfig {
    SolveMethod method = SolveMethod::NewtonFd;
    double tol = 1e-12;    // residual inf-norm threshold
    int max_iter = 50;
    double fd_eps = 1e-7;  // Jacobian column perturbation scale
};

struct SolveReport {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

enum class SolveErrorKind { NoConvergence, SingularJacobian, NanDetected };

struct SolveFailure : std::runtime_error {
    SolveFailure(SolveErrorKind k, SolveReport r, const std::string& msg)
        : std::runtime_error(msg), kind(k), report(r) {}
    SolveErrorKind kind;
    SolveReport report;
};

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// Finds x with ||residual(x)||_inf <= cfg.tol, or throws SolveFailure.
/// Newton perturbs column j by fd_eps * max(1, |x_j|); fixed-point iterates
/// x <- x - residual(x). Deterministic: identical inputs give bit-identical
/// outputs.
std::pair<std::vector<double>, SolveReport>
solve(const ResidualFn& residual, std::vector<double> x0, const SolveConfig& cfg);

}  // namespace hsint
