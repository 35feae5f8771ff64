#include "hsint/pinv.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <numbers>

namespace hsint {

namespace {

using cplx = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey. sign = -1 forward, +1 inverse
// (unscaled).
void fft_pow2(std::vector<cplx>& a, int sign) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx u = a[static_cast<std::size_t>(i + k)];
                cplx v = a[static_cast<std::size_t>(i + k + len / 2)] * w;
                a[static_cast<std::size_t>(i + k)] = u + v;
                a[static_cast<std::size_t>(i + k + len / 2)] = u - v;
                w *= wl;
            }
        }
    }
}

// Direct O(N^2) transform for non-power-of-two sizes (small test grids only).
std::vector<cplx> dft_direct(const std::vector<cplx>& a, int sign) {
    const int n = static_cast<int>(a.size());
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        cplx s(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi *
                               (static_cast<long long>(k) * j % n) / n;
            s += a[static_cast<std::size_t>(j)] * cplx(std::cos(ang), std::sin(ang));
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

void transform(std::vector<cplx>& a, int sign) {
    if (is_pow2(static_cast<int>(a.size()))) {
        fft_pow2(a, sign);
    } else {
        a = dft_direct(a, sign);
    }
}

double symbol_at(StencilKind stencil, int k, int n, double dx) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    if (stencil == StencilKind::NarrowSecond)
        return (2.0 * std::cos(theta) - 2.0) / (dx * dx);
    return (2.0 * std::cos(2.0 * theta) - 2.0) / (4.0 * dx * dx);
}

bool is_kernel_mode(StencilKind stencil, int k, int n) {
    if (k == 0) return true;
    return stencil == StencilKind::WideSecond && n % 2 == 0 && k == n / 2;
}

Eigen::MatrixXd dense_stencil_matrix(const Grid1D& grid, StencilKind stencil) {
    const int n = grid.count;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    for (int i = 0; i < n; ++i) {
        if (stencil == StencilKind::NarrowSecond) {
            const double s = 1.0 / (grid.dx * grid.dx);
            a(i, wrap(i - 1)) += s;
            a(i, i) += -2.0 * s;
            a(i, wrap(i + 1)) += s;
        } else {
            const double s = 1.0 / (4.0 * grid.dx * grid.dx);
            a(i, wrap(i - 2)) += s;
            a(i, i) += -2.0 * s;
            a(i, wrap(i + 2)) += s;
        }
    }
    return a;
}

}  // namespace

CirculantPinv::CirculantPinv(const Grid1D& grid, StencilKind stencil)
    : grid_(grid), stencil_(stencil), kernel_dim_(0) {
    if (grid.kind != GridKind::Periodic)
        throw std::invalid_argument("build_pinv: periodic grids only");
    const int n = grid.count;
    inv_multiplier_.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (is_kernel_mode(stencil, k, n)) {
            inv_multiplier_[static_cast<std::size_t>(k)] = 0.0;
            ++kernel_dim_;
        } else {
            inv_multiplier_[static_cast<std::size_t>(k)] =
                1.0 / symbol_at(stencil, k, n, grid.dx);
        }
    }
}

Field CirculantPinv::apply(const Field& f) const {
    if (!(f.grid == grid_))
        throw std::invalid_argument("apply_pinv: field grid does not match");
    const int n = grid_.count;
    std::vector<cplx> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = cplx(f[i], 0.0);
    transform(a, -1);
    for (int k = 0; k < n; ++k)
        a[static_cast<std::size_t>(k)] *= inv_multiplier_[static_cast<std::size_t>(k)];
    transform(a, +1);
    Field out = make_field(grid_);
    for (int i = 0; i < n; ++i) out[i] = a[static_cast<std::size_t>(i)].real() / n;
    return out;
}

CirculantPinv build_pinv(const Grid1D& grid, StencilKind stencil) {
    return CirculantPinv(grid, stencil);
}

Field apply_pinv(const CirculantPinv& pinv, const Field& f) { return pinv.apply(f); }

Field apply_stencil(const Grid1D& grid, StencilKind stencil, const Field& f) {
    if (!(f.grid == grid))
        throw std::invalid_argument("apply_stencil: field grid does not match");
    return apply_difference(f, stencil == StencilKind::NarrowSecond
                                   ? DiffKind::NarrowSecond
                                   : DiffKind::WideSecond);
}

Field dense_pinv_oracle(const Grid1D& grid, StencilKind stencil, const Field& f) {
    if (grid.kind != GridKind::Periodic)
        throw std::invalid_argument("dense_pinv_oracle: periodic grids only");
    if (grid.count > 1024)
        throw std::length_error("dense_pinv_oracle: N > 1024");
    const int n = grid.count;
    const Eigen::MatrixXd a = dense_stencil_matrix(grid, stencil);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-10 * sv(0);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = f[i];
    Eigen::VectorXd y = svd.matrixU().transpose() * rhs;
    for (int i = 0; i < n; ++i) y(i) = sv(i) > cutoff ? y(i) / sv(i) : 0.0;
    Eigen::VectorXd x = svd.matrixV() * y;
    Field out = make_field(grid);
    for (int i = 0; i < n; ++i) out[i] = x(i);
    return out;
}

int dense_stencil_rank(const Grid1D& grid, StencilKind stencil) {
    if (grid.count > 1024)
        throw std::length_error("dense_stencil_rank: N > 1024");
    const Eigen::MatrixXd a = dense_stencil_matrix(grid, stencil);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

}  // namespace hsint
