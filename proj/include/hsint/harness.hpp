/// @file harness.hpp
/// @brief Run orchestration, key=value configuration, invariant recording and
/// CSV/manifest persistence: the reproducibility surface for the experiment
/// runs.
///
/// Config files are `key=value` lines ('#' starts a comment). Unknown keys
/// are errors (fail-closed); command-line flags override file entries.
/// Outputs per run directory:
///   invariants.csv            header t,H1,H2,mean_u, one row per time level
///   profile_t<stamp>.csv      x,u[,ux|,rho][,u_exact[,rho_exact]]
///   manifest.txt              key=value echo of the full RunConfig + version
/// All files are LF-terminated UTF-8 text with 17-significant-digit decimals,
/// so identical configs give byte-identical outputs.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsint/grid.hpp"
#include "hsint/solver.hpp"
#include "hsint/waves.hpp"

namespace hsint {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Problem { Hs, Mhs, Hs2 };
enum class Scheme { Eb1, Eb2, H1, H2, Ms };

struct RunConfig {
    Problem problem = Problem::Hs;
    Scheme scheme = Scheme::Eb1;
    double L = 0.0;  // half-line half-width; periodic domains derive L from the wave
    int N = 0;
    double dt = 0.0;
    double tend = 0.0;
    std::string outdir = "out";
    int record_every = 0;  // profile stride; 0 keeps only the first/last profile
    unsigned seed = 0;
    // travelling-wave parameters (mhs: omega,m,M,c; hs2: b,z,Z,c,kappa)
    double omega = 0.0, m = 0.0, M = 0.0, c = 0.0;
    double b = 0.0, z = 0.0, Z = 0.0;
    int kappa = 1;
    SolveConfig solver;

    bool operator==(const RunConfig&) const;
};

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field, const std::string& msg)
        : std::runtime_error("config: " + field + ": " + msg), field(field) {}
    std::string field;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error("parse error (line " + std::to_string(line) + "): " + msg),
          line(line) {}
    int line;
};

/// Output directories are single-use (concurrent runs must not share one).
struct OutputDirInUse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered key=value entries; later entries override earlier ones.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Reads a key=value file. Throws ParseError with the offending line number.
ConfigEntries read_config_file(const std::string& path);

/// Builds and validates a RunConfig. Unknown keys and missing required keys
/// are errors.
RunConfig config_from_entries(const ConfigEntries& entries);

/// read_config_file + config_from_entries.
RunConfig parse_config(const std::string& path);

std::string problem_name(Problem p);
std::string scheme_name(Scheme s);

struct InvariantRow {
    double t = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double mean_u = 0.0;
    double aux = 0.0;  // checkerboard-mode amplitude diagnostic (not persisted)
};

struct ProfileSnapshot {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> aux;  // ux (hs) or rho (hs2); empty for mhs
};

struct FailureInfo {
    int step = -1;
    std::string message;
};

struct RunResult {
    RunConfig cfg;
    Grid1D grid;
    std::vector<InvariantRow> series;        // one row per time level, t increasing
    std::vector<ProfileSnapshot> snapshots;  // first, strided, last
    std::optional<TravellingWave> wave;      // reference solution (mhs/hs2)
    std::optional<FailureInfo> failure;      // set on numerical failure; series is partial
};

/// Runs the configured simulation. Numerical failures are captured in
/// result.failure with the failing step index and partial invariants kept.
RunResult run_simulation(const RunConfig& cfg);

/// Writes invariants.csv, profile files and manifest.txt into dir (created if
/// needed). Refuses to reuse a directory that already holds an invariants.csv.
void write_outputs(const RunResult& result, const std::string& dir);

/// The manifest echo of a config, as written to manifest.txt.
std::string manifest_text(const RunConfig& cfg);

}  // namespace hsint
