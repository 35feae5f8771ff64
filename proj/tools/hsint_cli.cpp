// Batch CLI for the structure-preserving Hunter-Saxton solvers.
//
//   hsint run   --config FILE [--key value ...]   run a simulation, write CSVs
//   hsint wave  --system mhs|hs2 ... --N --out    sample a travelling wave
//   hsint exact --t T --L L --N N --out FILE      sample the exact HS solution
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hsint/harness.hpp"
#include "hsint/waves.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct RunOptions {
    std::string config_path;
    hsint::ConfigEntries overrides;
};

int do_run(const RunOptions& opts) {
    hsint::ConfigEntries entries;
    if (!opts.config_path.empty()) entries = hsint::read_config_file(opts.config_path);
    for (const auto& kv : opts.overrides) entries.push_back(kv);

    hsint::RunConfig cfg;
    try {
        cfg = hsint::config_from_entries(entries);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    hsint::RunResult result;
    try {
        result = hsint::run_simulation(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hsint::PeriodNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    try {
        hsint::write_outputs(result, cfg.outdir);
    } catch (const hsint::OutputDirInUse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (result.failure) {
        std::cerr << "numerical failure at step " << result.failure->step << ": "
                  << result.failure->message << "\n"
                  << "partial outputs written to " << cfg.outdir << "\n";
        return kExitNumerical;
    }
    std::cout << "wrote " << cfg.outdir << " (" << result.series.size()
              << " invariant rows, " << result.snapshots.size() << " profiles)\n";
    return kExitOk;
}

struct WaveOptions {
    std::string system;
    double omega = 0.0, b = 0.0, m = 0.0, M = 0.0, z = 0.0, Z = 0.0, c = 0.0;
    int n = 0;
    std::string out;
};

int do_wave(const WaveOptions& o) {
    hsint::WaveSpec spec;
    if (o.system == "mhs") {
        spec.system = hsint::WaveSystem::Mhs;
        spec.omega = o.omega;
        spec.trough = o.m;
        spec.crest = o.M;
    } else if (o.system == "hs2") {
        spec.system = hsint::WaveSystem::Hs2;
        spec.b = o.b;
        spec.trough = o.z;
        spec.crest = o.Z;
    } else {
        std::cerr << "error: --system must be mhs or hs2\n";
        return kExitValidation;
    }
    spec.speed = o.c;

    hsint::TravellingWave wave;
    try {
        wave = hsint::generate_wave(spec, o.n);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hsint::PeriodNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }

    std::ostringstream csv;
    csv << "x,phi,phi_x" << (wave.psi ? ",psi" : "") << "\n";
    for (int i = 0; i < wave.grid.count; ++i) {
        csv << fmt(wave.grid.node(i)) << ',' << fmt(wave.phi[i]) << ','
            << fmt(wave.phi_x[i]);
        if (wave.psi) csv << ',' << fmt((*wave.psi)[i]);
        csv << "\n";
    }
    write_file(o.out, csv.str());
    std::cout << "L_per=" << fmt(wave.period) << " written to " << o.out << "\n";
    return kExitOk;
}

struct ExactOptions {
    double t = 0.0, L = 0.0;
    int n = 0;
    std::string out;
};

int do_exact(const ExactOptions& o) {
    if (!(o.t >= 0.0)) {
        std::cerr << "error: --t must be >= 0\n";
        return kExitValidation;
    }
    hsint::Grid1D grid;
    try {
        grid = hsint::build_grid(hsint::GridKind::HalfLineTruncated, o.L, o.n);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    std::ostringstream csv;
    csv << "x,u\n";
    for (int i = 0; i <= grid.count; ++i)
        csv << fmt(grid.node(i)) << ',' << fmt(hsint::hs_exact(grid.node(i), o.t)) << "\n";
    write_file(o.out, csv.str());
    std::cout << "written to " << o.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving finite-difference solvers for "
                 "Hunter-Saxton-like equations"};
    app.set_version_flag("--version", hsint::kArtifactVersion);
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "run a configured simulation");
    run->add_option("--config", run_opts.config_path, "key=value config file");
    // every config key is also a flag; flags override the file
    static const char* keys[] = {"problem", "scheme", "L", "N", "dt", "tend",
                                 "outdir", "record_every", "seed", "omega", "m", "M",
                                 "c", "b", "z", "Z", "kappa", "solver_method",
                                 "solver_tol", "solver_max_iter", "solver_fd_eps"};
    for (const char* key : keys) {
        run->add_option_function<std::string>(
            std::string("--") + key,
            [key, &run_opts](const std::string& value) {
                run_opts.overrides.emplace_back(key, value);
            },
            std::string("config key ") + key);
    }

    WaveOptions wave_opts;
    auto* wave = app.add_subcommand("wave", "sample a travelling wave as CSV");
    wave->add_option("--system", wave_opts.system, "mhs or hs2")->required();
    wave->add_option("--omega", wave_opts.omega, "mhs dispersion parameter");
    wave->add_option("--b", wave_opts.b, "hs2 amplitude parameter");
    wave->add_option("--m", wave_opts.m, "mhs wave minimum");
    wave->add_option("--M", wave_opts.M, "mhs wave maximum");
    wave->add_option("--z", wave_opts.z, "hs2 wave minimum");
    wave->add_option("--Z", wave_opts.Z, "hs2 wave maximum");
    wave->add_option("--c", wave_opts.c, "wave speed")->required();
    wave->add_option("--N", wave_opts.n, "sample count")->required();
    wave->add_option("--out", wave_opts.out, "output CSV path")->required();

    ExactOptions exact_opts;
    auto* exact = app.add_subcommand("exact", "sample the exact HS solution");
    exact->add_option("--t", exact_opts.t, "time")->required();
    exact->add_option("--L", exact_opts.L, "half-width of [-L, L]")->required();
    exact->add_option("--N", exact_opts.n, "interval count")->required();
    exact->add_option("--out", exact_opts.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (run->parsed()) return do_run(run_opts);
        if (wave->parsed()) return do_wave(wave_opts);
        if (exact->parsed()) return do_exact(exact_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
