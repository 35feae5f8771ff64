#include "hsint/grid.hpp"

#include <cmath>
#include <limits>

namespace hsint {

Grid1D build_grid(GridKind kind, double length, int count) {
    if (count < 4) throw std::invalid_argument("build_grid: N must be >= 4");
    if (!(length > 0.0)) throw std::invalid_argument("build_grid: L must be > 0");
    Grid1D g;
    g.kind = kind;
    g.length = length;
    g.count = count;
    g.dx = (kind == GridKind::HalfLineTruncated) ? 2.0 * length / count
                                                 : length / count;
    return g;
}

bool Field::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

Field make_field(const Grid1D& grid, double fill) {
    Field f;
    f.grid = grid;
    f.values.assign(static_cast<std::size_t>(grid.num_nodes()), fill);
    return f;
}

GhostRule validate_ghost_rule(GhostRule rule, int count) {
    auto check_side = [count](const std::vector<GhostSpec>& side, bool left) {
        for (const auto& spec : side) {
            const bool outside = left ? (spec.ghost_index < 0 && spec.ghost_index >= -2)
                                      : (spec.ghost_index > count && spec.ghost_index <= count + 2);
            if (!outside)
                throw std::invalid_argument("ghost rule: ghost index outside [-2,-1] / [N+1,N+2]");
            for (const auto& term : spec.combination)
                if (term.index < 0 || term.index > count)
                    throw std::invalid_argument("ghost rule: combination must reference interior nodes");
        }
    };
    check_side(rule.left, true);
    check_side(rule.right, false);
    return rule;
}

GhostRule hs_scheme_ghosts(int count) {
    GhostRule rule;
    rule.left.push_back({-1, {{1, 1.0}}});
    rule.right.push_back({count + 1, {{count - 1, 1.0}}});
    rule.right.push_back({count + 2, {{count, 2.0}, {count - 2, -1.0}}});
    return validate_ghost_rule(std::move(rule), count);
}

ExtendedField::ExtendedField(const Field& interior, int left_defined, int right_defined)
    : grid_(interior.grid),
      interior_size_(interior.grid.count),
      left_defined_(left_defined),
      right_defined_(right_defined) {
    if (interior.grid.kind != GridKind::HalfLineTruncated)
        throw std::invalid_argument("ExtendedField: half-line fields only");
    buf_.assign(static_cast<std::size_t>(interior_size_ + 5),
                std::numeric_limits<double>::quiet_NaN());
    for (int n = 0; n <= interior_size_; ++n) buf_[static_cast<std::size_t>(n + 2)] = interior[n];
}

Field ExtendedField::interior() const {
    Field f;
    f.grid = grid_;
    f.values.assign(buf_.begin() + 2, buf_.begin() + 2 + interior_size_ + 1);
    return f;
}

ExtendedField extend_halfline_ghosts(const Field& u, const GhostRule& rule) {
    int left = 0, right = 0;
    for (const auto& spec : rule.left) left = std::max(left, -spec.ghost_index);
    for (const auto& spec : rule.right) right = std::max(right, spec.ghost_index - u.grid.count);
    ExtendedField ext(u, left, right);
    auto fill = [&](const GhostSpec& spec) {
        double v = 0.0;
        for (const auto& term : spec.combination) v += term.coeff * u[term.index];
        ext.slot(spec.ghost_index) = v;
    };
    for (const auto& spec : rule.left) fill(spec);
    for (const auto& spec : rule.right) fill(spec);
    return ext;
}

namespace {

// stencil reach to the left/right of the output node
void stencil_reach(DiffKind kind, int& left, int& right) {
    switch (kind) {
        case DiffKind::Forward: left = 0; right = 1; break;
        case DiffKind::Backward: left = 1; right = 0; break;
        case DiffKind::Centered: left = 1; right = 1; break;
        case DiffKind::NarrowSecond: left = 1; right = 1; break;
        case DiffKind::WideSecond: left = 2; right = 2; break;
    }
}

double stencil_eval(DiffKind kind, const double* f, double dx) {
    switch (kind) {
        case DiffKind::Forward: return (f[1] - f[0]) / dx;
        case DiffKind::Backward: return (f[0] - f[-1]) / dx;
        case DiffKind::Centered: return (f[1] - f[-1]) / (2.0 * dx);
        case DiffKind::NarrowSecond: return (f[1] - 2.0 * f[0] + f[-1]) / (dx * dx);
        case DiffKind::WideSecond: return (f[2] - 2.0 * f[0] + f[-2]) / (4.0 * dx * dx);
    }
    return 0.0;
}

}  // namespace

Field apply_difference(const Field& f, DiffKind kind) {
    if (f.grid.kind != GridKind::Periodic)
        throw std::invalid_argument("apply_difference(Field): periodic grids only; "
                                    "use an ExtendedField on the half-line");
    const int n = f.grid.count;
    const double dx = f.grid.dx;
    Field out = make_field(f.grid);
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    for (int i = 0; i < n; ++i) {
        double window[5];
        for (int k = -2; k <= 2; ++k) window[k + 2] = f[wrap(i + k)];
        out[i] = stencil_eval(kind, window + 2, dx);
    }
    return out;
}

Field apply_difference(const ExtendedField& f, DiffKind kind) {
    int left = 0, right = 0;
    stencil_reach(kind, left, right);
    if (left > f.left_defined() || right > f.right_defined())
        throw MissingGhost("apply_difference: stencil reaches an undefined ghost slot");
    const int n = f.interior_size();
    Field out = make_field(f.grid());
    for (int i = 0; i <= n; ++i) {
        double window[5];
        for (int k = -2; k <= 2; ++k)
            window[k + 2] = (k >= -left && k <= right) ? f.at(i + k) : 0.0;
        out[i] = stencil_eval(kind, window + 2, f.dx());
    }
    return out;
}

double trapz_doubleprime(const Field& f) {
    if (f.grid.kind != GridKind::HalfLineTruncated)
        throw std::invalid_argument("trapz_doubleprime: half-line fields only");
    const int n = f.grid.count;
    double s = 0.5 * (f[0] + f[n]);
    for (int i = 1; i < n; ++i) s += f[i];
    return s * f.grid.dx;
}

double sbp_residual(const ExtendedField& f, const ExtendedField& g) {
    if (f.interior_size() != g.interior_size())
        throw std::invalid_argument("sbp_residual: size mismatch");
    if (f.left_defined() < 1 || g.right_defined() < 1)
        throw MissingGhost("sbp_residual: needs f^{-1} and g^{N+1}");
    const int n = f.interior_size();
    auto w = [n](int i) { return (i == 0 || i == n) ? 0.5 : 1.0; };
    double lhs = 0.0;
    for (int i = 0; i <= n; ++i)
        lhs += w(i) * f.at(i) * (g.at(i + 1) - g.at(i));  // f (d+ g) dx, dx cancels
    for (int i = 0; i <= n; ++i)
        lhs += w(i) * (f.at(i) - f.at(i - 1)) * g.at(i);
    const double bnd = 0.5 * (f.at(n) * g.at(n + 1) + f.at(n - 1) * g.at(n)) -
                       0.5 * (f.at(0) * g.at(1) + f.at(-1) * g.at(0));
    return lhs - bnd;
}

double checkerboard_amplitude(const Field& f) {
    double s = 0.0;
    double sign = 1.0;
    for (double v : f.values) {
        s += sign * v;
        sign = -sign;
    }
    return std::abs(s) / static_cast<double>(f.size());
}

}  // namespace hsint
