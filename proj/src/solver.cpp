#include "hsint/solver.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hsint {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::pair<std::vector<double>, SolveReport>
solve(const ResidualFn& residual, std::vector<double> x0, const SolveConfig& cfg) {
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1 || !(cfg.fd_eps > 0.0))
        throw std::invalid_argument("solve: invalid SolveConfig");
    if (!finite(x0))
        throw SolveFailure(SolveErrorKind::NanDetected, {}, "solve: non-finite initial guess");

    const int n = static_cast<int>(x0.size());
    std::vector<double> x = std::move(x0);
    std::vector<double> r = residual(x);
    if (static_cast<int>(r.size()) != n)
        throw std::invalid_argument("solve: residual size mismatch");

    SolveReport report;
    report.final_residual = inf_norm(r);
    if (!finite(r))
        throw SolveFailure(SolveErrorKind::NanDetected, report, "solve: non-finite residual");
    if (report.final_residual <= cfg.tol) {
        report.converged = true;
        return {x, report};
    }

    for (int it = 1; it <= cfg.max_iter; ++it) {
        if (cfg.method == SolveMethod::NewtonFd) {
            Eigen::MatrixXd jac(n, n);
            std::vector<double> xp = x;
            for (int j = 0; j < n; ++j) {
                const double h = cfg.fd_eps * std::max(1.0, std::abs(x[static_cast<std::size_t>(j)]));
                xp[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + h;
                const std::vector<double> rp = residual(xp);
                xp[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
                for (int i = 0; i < n; ++i)
                    jac(i, j) = (rp[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]) / h;
            }
            Eigen::VectorXd rhs(n);
            for (int i = 0; i < n; ++i) rhs(i) = -r[static_cast<std::size_t>(i)];
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
            Eigen::VectorXd d = lu.solve(rhs);
            if (!d.allFinite()) {
                report.iterations = it;
                throw SolveFailure(SolveErrorKind::SingularJacobian, report,
                                   "solve: singular Jacobian");
            }
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += d(i);
        } else {
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= r[static_cast<std::size_t>(i)];
        }

        if (!finite(x)) {
            report.iterations = it;
            throw SolveFailure(SolveErrorKind::NanDetected, report, "solve: iterate diverged");
        }
        r = residual(x);
        report.iterations = it;
        report.final_residual = inf_norm(r);
        if (!finite(r))
            throw SolveFailure(SolveErrorKind::NanDetected, report, "solve: non-finite residual");
        if (report.final_residual <= cfg.tol) {
            report.converged = true;
            return {x, report};
        }
    }

    throw SolveFailure(SolveErrorKind::NoConvergence, report,
                       "solve: no convergence within max_iter");
}

}  // namespace hsint
