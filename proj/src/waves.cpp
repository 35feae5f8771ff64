#include "hsint/waves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace hsint {

double hs_exact(double x, double t) {
    const double tau = 0.5 * t + 1.0;
    if (x <= 0.0) return 0.0;
    if (x < tau * tau) return x / tau;
    return tau;
}

namespace {

struct WaveOde {
    // phi'' = dF/dphi / 2 for the first-integral form (phi')^2 = F(phi)
    WaveSystem system;
    double omega, b, trough, crest, speed;

    double f_value(double phi) const {
        const double p = (crest - phi) * (phi - trough);
        if (system == WaveSystem::Mhs) return 2.0 * omega * p / (speed - phi);
        const double d = speed - phi;
        return b * p / (d * d);
    }
    double f_slope(double phi) const {
        const double p = (crest - phi) * (phi - trough);
        const double dp = crest + trough - 2.0 * phi;
        const double d = speed - phi;
        if (system == WaveSystem::Mhs) return 2.0 * omega * (dp * d + p) / (d * d);
        return b * (dp * d + 2.0 * p) / (d * d * d);
    }
    std::array<double, 2> rhs(const std::array<double, 2>& y) const {
        return {y[1], 0.5 * f_slope(y[0])};
    }
};

constexpr double kOdeTol = 1e-11;

// One Dormand-Prince 5(4) step. Returns the scaled error estimate.
double dp_step(const WaveOde& ode, const std::array<double, 2>& y, double h,
               std::array<double, 2>& out) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    auto axpy = [&](std::initializer_list<std::pair<double, const std::array<double, 2>*>> terms) {
        std::array<double, 2> r = y;
        for (const auto& [c, k] : terms) {
            r[0] += h * c * (*k)[0];
            r[1] += h * c * (*k)[1];
        }
        return r;
    };

    const auto k1 = ode.rhs(y);
    const auto k2 = ode.rhs(axpy({{a21, &k1}}));
    const auto k3 = ode.rhs(axpy({{a31, &k1}, {a32, &k2}}));
    const auto k4 = ode.rhs(axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const auto k5 = ode.rhs(axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const auto k6 = ode.rhs(axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    out = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const auto k7 = ode.rhs(out);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                              e6 * k6[i] + e7 * k7[i]);
        const double scale = kOdeTol + kOdeTol * std::max(std::abs(y[i]), std::abs(out[i]));
        err = std::max(err, std::abs(e) / scale);
    }
    return err;
}

// Advances y from s to s_target with adaptive steps, hitting the endpoint
// exactly.
void integrate_to(const WaveOde& ode, std::array<double, 2>& y, double s, double s_target) {
    double h = (s_target - s) / 16.0;
    if (h <= 0.0) return;
    while (s < s_target) {
        h = std::min(h, s_target - s);
        std::array<double, 2> y_new;
        const double err = dp_step(ode, y, h, y_new);
        if (err <= 1.0) {
            s += h;
            y = y_new;
        }
        const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= factor;
        if (!(h > 0.0) || !std::isfinite(y[0]) || !std::isfinite(y[1]))
            throw std::runtime_error("wave ODE integration failed");
    }
}

double detect_period(const WaveOde& ode) {
    const double budget = 100.0 * (ode.crest - ode.trough);
    std::array<double, 2> y = {ode.trough, 0.0};
    double s = 0.0;
    double h = (ode.crest - ode.trough) / 64.0;
    // bracket the first minus-to-plus sign change of phi'
    double s_lo = 0.0;
    std::array<double, 2> y_lo = y;
    bool bracketed = false;
    while (s < budget) {
        std::array<double, 2> y_new;
        const double err = dp_step(ode, y, h, y_new);
        if (err <= 1.0) {
            if (y[1] < 0.0 && y_new[1] >= 0.0) {
                s_lo = s;
                y_lo = y;
                bracketed = true;
                s += h;
                break;
            }
            s += h;
            y = y_new;
        }
        h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    }
    if (!bracketed) throw PeriodNotFound("generate_wave: no period within length budget");

    double lo = s_lo, hi = s;
    for (int it = 0; it < 80 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        std::array<double, 2> y_mid = y_lo;
        integrate_to(ode, y_mid, lo, mid);
        if (y_mid[1] < 0.0) {
            lo = mid;
            y_lo = y_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int wrap_index(int i, int n) { return ((i % n) + n) % n; }

// 4-point Lagrange interpolation of uniform periodic samples at s in [0, L).
double interp_periodic(const std::vector<double>& samples, double period, double s) {
    const int n = static_cast<int>(samples.size());
    const double h = period / n;
    double u = s / h;
    int j = static_cast<int>(std::floor(u));
    double tau = u - j;
    const double ym = samples[static_cast<std::size_t>(wrap_index(j - 1, n))];
    const double y0 = samples[static_cast<std::size_t>(wrap_index(j, n))];
    const double y1 = samples[static_cast<std::size_t>(wrap_index(j + 1, n))];
    const double y2 = samples[static_cast<std::size_t>(wrap_index(j + 2, n))];
    return ym * (-tau * (tau - 1.0) * (tau - 2.0) / 6.0) +
           y0 * ((tau + 1.0) * (tau - 1.0) * (tau - 2.0) / 2.0) +
           y1 * (-(tau + 1.0) * tau * (tau - 2.0) / 2.0) +
           y2 * ((tau + 1.0) * tau * (tau - 1.0) / 6.0);
}

}  // namespace

TravellingWave generate_wave(const WaveSpec& spec, int count) {
    if (spec.system == WaveSystem::Mhs) {
        if (!(spec.omega > 0.0))
            throw std::invalid_argument("generate_wave: omega must be > 0");
    } else {
        if (!(spec.b > 0.0)) throw std::invalid_argument("generate_wave: b must be > 0");
        if (spec.kappa != 1)
            throw std::invalid_argument("generate_wave: only kappa = 1 waves are supported");
    }
    if (!(spec.trough < spec.crest && spec.crest < spec.speed))
        throw std::invalid_argument("generate_wave: need trough < crest < speed");

    WaveOde ode{spec.system, spec.omega, spec.b, spec.trough, spec.crest, spec.speed};
    const double period = detect_period(ode);

    TravellingWave wave;
    wave.spec = spec;
    wave.spec.period = period;
    wave.period = period;
    wave.grid = build_grid(GridKind::Periodic, period, count);
    wave.phi = make_field(wave.grid);
    wave.phi_x = make_field(wave.grid);

    std::array<double, 2> y = {spec.trough, 0.0};
    double s = 0.0;
    wave.phi[0] = y[0];
    wave.phi_x[0] = y[1];
    for (int j = 1; j < count; ++j) {
        const double target = period * j / count;
        integrate_to(ode, y, s, target);
        s = target;
        wave.phi[j] = y[0];
        wave.phi_x[j] = y[1];
    }

    if (spec.system == WaveSystem::Hs2) {
        wave.a = std::sqrt(spec.b * (spec.speed - spec.trough) * (spec.speed - spec.crest));
        Field psi = make_field(wave.grid);
        for (int j = 0; j < count; ++j) psi[j] = wave.a / (spec.speed - wave.phi[j]);
        wave.psi = std::move(psi);
    }
    return wave;
}

double exact_shifted(const TravellingWave& wave, double t, double x) {
    double s = std::fmod(x - wave.spec.speed * t, wave.period);
    if (s < 0.0) s += wave.period;
    return interp_periodic(wave.phi.values, wave.period, s);
}

double exact_shifted_psi(const TravellingWave& wave, double t, double x) {
    if (!wave.psi) throw std::invalid_argument("exact_shifted_psi: not a two-component wave");
    return wave.a / (wave.spec.speed - exact_shifted(wave, t, x));
}

double mean_constant_h(const Field& f) {
    if (f.grid.kind != GridKind::Periodic)
        throw std::invalid_argument("mean_constant_h: periodic fields only");
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.size());
}

IntegrationConstants mhs_integration_constants(const Field& u, double omega) {
    const Field ux_fwd = apply_difference(u, DiffKind::Forward);
    const Field ux = apply_difference(u, DiffKind::Centered);
    const int n = u.grid.count;
    Field integrand = make_field(u.grid);
    double a_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        a_sum += 0.5 * ux_fwd[i] * ux_fwd[i] + 2.0 * omega * u[i];
        integrand[i] = 0.5 * ux[i] * ux[i] + 2.0 * omega * u[i];
    }
    IntegrationConstants out;
    out.a = -a_sum / n;
    for (int i = 0; i < n; ++i) integrand[i] += out.a;
    // cumulative trapezoid antiderivative from node 0
    Field anti = make_field(u.grid);
    for (int i = 1; i < n; ++i)
        anti[i] = anti[i - 1] + 0.5 * u.grid.dx * (integrand[i - 1] + integrand[i]);
    double h_sum = 0.0;
    for (int i = 0; i < n; ++i) h_sum += u[i] * ux[i] - anti[i];
    out.h = h_sum / n;
    return out;
}

}  // namespace hsint
