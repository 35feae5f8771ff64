/// @file grid.hpp
/// @brief Uniform 1-D grids, finite-difference stencils, ghost-point boundary
/// extensions and trapezoidal sums.
///
/// Two domain kinds are supported:
///   - HalfLineTruncated: [-L, L] with nodes x_0 = -L .. x_N = L, dx = 2L/N
///     (N+1 stored values). Stencils near the edges read ghost values that a
///     GhostRule materialises into an ExtendedField.
///   - Periodic: [0, L) with nodes x_0 .. x_{N-1}, dx = L/N (N stored values),
///     index arithmetic modulo N.
///
/// Stencils (uniform spacing h):
///   forward        (f[n+1] - f[n]) / h
///   backward       (f[n] - f[n-1]) / h
///   centered       (f[n+1] - f[n-1]) / (2h)
///   narrow_second  (f[n+1] - 2 f[n] + f[n-1]) / h^2
///   wide_second    (f[n+2] - 2 f[n] + f[n-2]) / (4 h^2)   [= centered twice]
/// narrow_second and wide_second are different operators.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hsint {

enum class GridKind { HalfLineTruncated, Periodic };

struct Grid1D {
    GridKind kind = GridKind::Periodic;
    double length = 0.0;  // half-width for the half-line, period for periodic
    int count = 0;        // N
    double dx = 0.0;

    int num_nodes() const {
        return kind == GridKind::Periodic ? count : count + 1;
    }
    double node(int n) const {
        return kind == GridKind::Periodic ? n * dx : -length + n * dx;
    }
    bool operator==(const Grid1D&) const = default;
};

/// dx = 2L/N (half-line) or L/N (periodic). Throws std::invalid_argument
/// on N < 4 or L <= 0.
Grid1D build_grid(GridKind kind, double length, int count);

struct Field {
    Grid1D grid;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int n) { return values[static_cast<std::size_t>(n)]; }
    double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
    bool all_finite() const;
};

/// Zero-filled field of the right length for the grid.
Field make_field(const Grid1D& grid, double fill = 0.0);

enum class DiffKind { Forward, Backward, Centered, NarrowSecond, WideSecond };

/// One ghost slot defined as a linear combination of interior values,
/// e.g. u^{N+2} = 2 u^N - u^{N-2}.
struct GhostTerm {
    int index;     // interior node index
    double coeff;
};
struct GhostSpec {
    int ghost_index;  // < 0 (left) or > N (right)
    std::vector<GhostTerm> combination;
};
struct GhostRule {
    std::vector<GhostSpec> left;
    std::vector<GhostSpec> right;
};

/// Validates ghost indices (outside the interior, within reach 2) and that
/// combinations reference interior nodes only. Throws std::invalid_argument.
GhostRule validate_ghost_rule(GhostRule rule, int count);

/// The discrete boundary conditions used by the half-line HS schemes:
/// u^{-1} = u^1, u^{N+1} = u^{N-1}, u^{N+2} = 2 u^N - u^{N-2}
/// (u^0 = 0 is data, not a ghost).
GhostRule hs_scheme_ghosts(int count);

/// Half-line field with up to two materialised ghost cells per side.
/// Undefined ghost slots hold NaN and are guarded by the defined counts.
class ExtendedField {
public:
    ExtendedField(const Field& interior, int left_defined, int right_defined);

    double at(int n) const { return buf_[static_cast<std::size_t>(n + 2)]; }
    double& slot(int n) { return buf_[static_cast<std::size_t>(n + 2)]; }

    int interior_size() const { return interior_size_; }  // N
    int left_defined() const { return left_defined_; }
    int right_defined() const { return right_defined_; }
    double dx() const { return grid_.dx; }
    const Grid1D& grid() const { return grid_; }

    Field interior() const;

private:
    Grid1D grid_;
    std::vector<double> buf_;  // layout: [-2, -1, 0 .. N, N+1, N+2]
    int interior_size_;
    int left_defined_;
    int right_defined_;
};

/// Fills ghost slots from the rule's linear combinations; interior untouched.
ExtendedField extend_halfline_ghosts(const Field& u, const GhostRule& rule);

/// Periodic stencil application (wraparound indexing), all nodes.
Field apply_difference(const Field& f, DiffKind kind);

/// Half-line stencil application at every node 0..N. Throws MissingGhost if
/// the stencil reaches an undefined ghost slot.
Field apply_difference(const ExtendedField& f, DiffKind kind);

struct MissingGhost : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trapezoidal "double-prime" sum (1/2 f^0 + f^1 + .. + f^{N-1} + 1/2 f^N) dx.
/// Half-line fields only.
double trapz_doubleprime(const Field& f);

/// Residual of the summation-by-parts identity
///   sum'' f (d+ g) dx + sum'' (d- f) g dx - [ (f^n g^{n+1} + f^{n-1} g^n)/2 ]_0^N.
/// Needs g^{N+1} and f^{-1}; exact identity, so the result is rounding-level.
double sbp_residual(const ExtendedField& f, const ExtendedField& g);

/// Mean magnitude of the (-1)^n component; diagnostic for leapfrog
/// checkerboard modes.
double checkerboard_amplitude(const Field& f);

}  // namespace hsint
