/// @file pinv.hpp
/// @brief Minimum-norm pseudo-inverses of the periodic second-difference
/// operators, plus an independent dense-SVD oracle.
///
/// Both operators are circulant, so the pseudo-inverse is diagonal in Fourier
/// space: invert the operator symbol mode by mode and zero the kernel modes.
/// Symbols at theta_k = 2 pi k / N:
///   narrow_second  (2 cos theta_k - 2) / dx^2          kernel: k = 0
///   wide_second    (2 cos 2 theta_k - 2) / (4 dx^2)    kernel: k = 0, and
///                                                      k = N/2 when N is even
/// Kernel modes are identified by integer arithmetic, never by comparing a
/// floating-point symbol against zero.

#pragma once

#include <vector>

#include "hsint/grid.hpp"

namespace hsint {

enum class StencilKind { NarrowSecond, WideSecond };

class CirculantPinv {
public:
    CirculantPinv(const Grid1D& grid, StencilKind stencil);

    /// g = A^+ f: g is orthogonal to ker(A) and A g is the projection of f
    /// onto range(A). Safe to call concurrently.
    Field apply(const Field& f) const;

    const Grid1D& grid() const { return grid_; }
    StencilKind stencil_kind() const { return stencil_; }
    int kernel_dim() const { return kernel_dim_; }
    /// Per-mode inverse multipliers, zero on kernel modes.
    const std::vector<double>& spectrum() const { return inv_multiplier_; }

private:
    Grid1D grid_;
    StencilKind stencil_;
    std::vector<double> inv_multiplier_;
    int kernel_dim_;
};

/// Throws std::invalid_argument on a non-periodic grid.
CirculantPinv build_pinv(const Grid1D& grid, StencilKind stencil);

Field apply_pinv(const CirculantPinv& pinv, const Field& f);

/// Applies the periodic stencil itself (the A in A^+); convenience for
/// Moore-Penrose identity checks.
Field apply_stencil(const Grid1D& grid, StencilKind stencil, const Field& f);

/// Test oracle: builds the explicit N x N circulant matrix and applies its
/// Moore-Penrose pseudo-inverse via dense SVD. Throws std::length_error for
/// N > 1024.
Field dense_pinv_oracle(const Grid1D& grid, StencilKind stencil, const Field& f);

/// Numerical rank of the dense stencil matrix (SVD threshold 1e-10 relative).
int dense_stencil_rank(const Grid1D& grid, StencilKind stencil);

}  // namespace hsint
