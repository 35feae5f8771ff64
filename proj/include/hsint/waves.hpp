/// @file waves.hpp
/// @brief Reference solutions: the exact piecewise HS weak solution, periodic
/// travelling-wave generators for the modified and two-component systems, and
/// the integration-constant diagnostics.
///
/// Travelling waves are generated from the turning-point-free second-order
/// form phi'' = F'(phi)/2, obtained by differentiating (phi')^2 = F(phi):
///   mhs: F(phi) = 2 omega (M - phi)(phi - m) / (c - phi),       m < M < c
///   hs2: F(phi) = b (Z - phi)(phi - z) / (c - phi)^2,           z < Z < c
/// integrated from phi(0) = trough, phi'(0) = 0 with an adaptive embedded
/// Runge-Kutta pair (tolerance 1e-11). The period is the distance between
/// successive minima, located by a sign change of phi' and bisection
/// refinement to 1e-10. For hs2 the density profile is psi = a/(c - phi)
/// with a = sqrt(b (c - z)(c - Z)).

#pragma once

#include <optional>

#include "hsint/grid.hpp"

namespace hsint {

/// Exact weak solution of the HS equation:
/// 0 for x <= 0; x/(0.5 t + 1) on the ramp 0 < x < (0.5 t + 1)^2;
/// 0.5 t + 1 beyond.
double hs_exact(double x, double t);

enum class WaveSystem { Mhs, Hs2 };

struct WaveSpec {
    WaveSystem system = WaveSystem::Mhs;
    double omega = 0.0;   // mhs only, > 0
    double b = 0.0;       // hs2 only, > 0
    double trough = 0.0;  // m (mhs) or z (hs2), wave minimum
    double crest = 0.0;   // M (mhs) or Z (hs2), wave maximum
    double speed = 0.0;   // c, with trough < crest < c
    int kappa = 1;        // hs2 only
    double period = 0.0;  // L_per, filled by the generator
};

struct TravellingWave {
    WaveSpec spec;             // period filled
    Grid1D grid;               // periodic [0, L_per), N nodes
    Field phi;                 // u samples
    Field phi_x;               // phi' samples
    std::optional<Field> psi;  // rho samples (hs2)
    double period = 0.0;
    double a = 0.0;            // hs2: sqrt(b (c-z)(c-Z)), else 0
};

/// Integrates the wave ODE, detects the period and resamples onto a uniform
/// periodic grid of N nodes over [0, L_per). Throws std::invalid_argument on
/// a parameter-order violation or kappa = -1, and PeriodNotFound if no
/// period shows up within a length budget of 100 (crest - trough).
TravellingWave generate_wave(const WaveSpec& spec, int count);

struct PeriodNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// phi((x - c t) mod L_per) by 4-point periodic Lagrange interpolation of the
/// sampled wave.
double exact_shifted(const TravellingWave& wave, double t, double x);

/// rho reference for hs2: a / (c - phi(x - c t)).
double exact_shifted_psi(const TravellingWave& wave, double t, double x);

/// Arithmetic mean of a periodic field (the exact discrete analogue of the
/// trapezoid on a periodic grid).
double mean_constant_h(const Field& f);

struct IntegrationConstants {
    double a = 0.0;  // rank -1 constant
    double h = 0.0;  // rank 0 constant
};

/// Diagnostic quadrature of the periodic mHS integration constants:
/// a = -mean(u_x^2/2 + 2 omega u) and h recovered from the rank-0 form with a
/// cumulative trapezoid antiderivative.
IntegrationConstants mhs_integration_constants(const Field& u, double omega);

}  // namespace hsint
