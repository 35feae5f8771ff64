#include "hsint/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "hsint/pinv.hpp"
#include "hsint/schemes_2hs.hpp"
#include "hsint/schemes_hs.hpp"
#include "hsint/schemes_mhs.hpp"

namespace hsint {

namespace {

const std::set<std::string> kKnownKeys = {
    "version",      "problem",  "scheme", "L",     "N",     "dt",
    "tend",         "outdir",   "record_every",    "seed",  "omega",
    "m",            "M",        "c",      "b",     "z",     "Z",
    "kappa",        "solver_method",      "solver_tol",
    "solver_max_iter",          "solver_fd_eps"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key, "trailing junk in '" + value + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key, "trailing junk in '" + value + "'");
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool scheme_valid_for(Problem p, Scheme s) {
    if (p == Problem::Hs)
        return s == Scheme::Eb1 || s == Scheme::Eb2 || s == Scheme::H1 || s == Scheme::H2;
    return s == Scheme::Ms || s == Scheme::H1;
}

WaveSpec wave_spec_from(const RunConfig& cfg) {
    WaveSpec spec;
    if (cfg.problem == Problem::Mhs) {
        spec.system = WaveSystem::Mhs;
        spec.omega = cfg.omega;
        spec.trough = cfg.m;
        spec.crest = cfg.M;
    } else {
        spec.system = WaveSystem::Hs2;
        spec.b = cfg.b;
        spec.trough = cfg.z;
        spec.crest = cfg.Z;
        spec.kappa = cfg.kappa;
    }
    spec.speed = cfg.c;
    return spec;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return problem == o.problem && scheme == o.scheme && L == o.L && N == o.N &&
           dt == o.dt && tend == o.tend && outdir == o.outdir &&
           record_every == o.record_every && seed == o.seed && omega == o.omega &&
           m == o.m && M == o.M && c == o.c && b == o.b && z == o.z && Z == o.Z &&
           kappa == o.kappa && solver.method == o.solver.method &&
           solver.tol == o.solver.tol && solver.max_iter == o.solver.max_iter &&
           solver.fd_eps == o.solver.fd_eps;
}

std::string problem_name(Problem p) {
    switch (p) {
        case Problem::Hs: return "hs";
        case Problem::Mhs: return "mhs";
        case Problem::Hs2: return "hs2";
    }
    return "?";
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Eb1: return "eb1";
        case Scheme::Eb2: return "eb2";
        case Scheme::H1: return "h1";
        case Scheme::H2: return "h2";
        case Scheme::Ms: return "ms";
    }
    return "?";
}

ConfigEntries read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ConfigEntries entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "expected key=value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "empty key");
        if (!kKnownKeys.count(key)) throw ParseError(lineno, "unknown key '" + key + "'");
        entries.emplace_back(key, value);
    }
    return entries;
}

RunConfig config_from_entries(const ConfigEntries& entries) {
    std::map<std::string, std::string> kv;
    for (const auto& [key, value] : entries) {
        if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown key");
        kv[key] = value;  // later entries override earlier ones
    }

    const std::vector<std::string> required = {"problem", "scheme", "N", "dt", "tend"};
    std::string missing;
    for (const auto& key : required)
        if (!kv.count(key)) missing += (missing.empty() ? "" : ", ") + key;
    if (!missing.empty()) throw ConfigError(missing, "missing required key(s)");

    RunConfig cfg;
    const std::string prob = kv.at("problem");
    if (prob == "hs") cfg.problem = Problem::Hs;
    else if (prob == "mhs") cfg.problem = Problem::Mhs;
    else if (prob == "hs2") cfg.problem = Problem::Hs2;
    else throw ConfigError("problem", "must be hs, mhs or hs2");

    const std::string sch = kv.at("scheme");
    if (sch == "eb1") cfg.scheme = Scheme::Eb1;
    else if (sch == "eb2") cfg.scheme = Scheme::Eb2;
    else if (sch == "h1") cfg.scheme = Scheme::H1;
    else if (sch == "h2") cfg.scheme = Scheme::H2;
    else if (sch == "ms") cfg.scheme = Scheme::Ms;
    else throw ConfigError("scheme", "must be eb1, eb2, h1, h2 or ms");

    if (!scheme_valid_for(cfg.problem, cfg.scheme))
        throw ConfigError("scheme", "scheme '" + sch + "' is not valid for problem '" +
                                        prob + "' (hs: eb1|eb2|h1|h2; mhs/hs2: ms|h1)");

    cfg.N = static_cast<int>(parse_long("N", kv.at("N")));
    if (cfg.N < 4) throw ConfigError("N", "must be >= 4");
    cfg.dt = parse_double("dt", kv.at("dt"));
    if (!(cfg.dt > 0.0)) throw ConfigError("dt", "must be > 0");
    cfg.tend = parse_double("tend", kv.at("tend"));
    if (!(cfg.tend >= 0.0)) throw ConfigError("tend", "must be >= 0");

    const bool periodic = cfg.problem != Problem::Hs;
    if (kv.count("L")) {
        cfg.L = parse_double("L", kv.at("L"));
        if (periodic && cfg.L != 0.0)
            throw ConfigError("L", "periodic problems derive L from the wave period; "
                                   "do not set L");
        if (!periodic && !(cfg.L > 0.0)) throw ConfigError("L", "must be > 0");
    } else if (!periodic) {
        throw ConfigError("L", "missing required key for problem hs");
    }

    if (cfg.problem == Problem::Mhs) {
        for (const char* key : {"omega", "m", "M", "c"})
            if (!kv.count(key)) throw ConfigError(key, "missing required key for problem mhs");
        cfg.omega = parse_double("omega", kv.at("omega"));
        cfg.m = parse_double("m", kv.at("m"));
        cfg.M = parse_double("M", kv.at("M"));
        cfg.c = parse_double("c", kv.at("c"));
        if (!(cfg.omega > 0.0)) throw ConfigError("omega", "must be > 0");
        if (!(cfg.m < cfg.M && cfg.M < cfg.c))
            throw ConfigError("m", "need m < M < c");
    } else if (cfg.problem == Problem::Hs2) {
        for (const char* key : {"b", "z", "Z", "c"})
            if (!kv.count(key)) throw ConfigError(key, "missing required key for problem hs2");
        cfg.b = parse_double("b", kv.at("b"));
        cfg.z = parse_double("z", kv.at("z"));
        cfg.Z = parse_double("Z", kv.at("Z"));
        cfg.c = parse_double("c", kv.at("c"));
        if (!(cfg.b > 0.0)) throw ConfigError("b", "must be > 0");
        if (!(cfg.z < cfg.Z && cfg.Z < cfg.c))
            throw ConfigError("z", "need z < Z < c");
    }
    // keys irrelevant to the chosen problem are rejected so that the manifest
    // echo round-trips exactly
    const std::map<Problem, std::set<std::string>> irrelevant = {
        {Problem::Hs, {"omega", "m", "M", "c", "b", "z", "Z", "kappa"}},
        {Problem::Mhs, {"b", "z", "Z", "kappa"}},
        {Problem::Hs2, {"omega", "m", "M"}},
    };
    for (const auto& key : irrelevant.at(cfg.problem))
        if (kv.count(key))
            throw ConfigError(key, "not applicable to problem '" + prob + "'");
    if (cfg.problem == Problem::Hs2 && kv.count("kappa")) {
        cfg.kappa = static_cast<int>(parse_long("kappa", kv.at("kappa")));
        if (cfg.kappa != 1 && cfg.kappa != -1) throw ConfigError("kappa", "must be 1 or -1");
    }

    if (kv.count("outdir")) cfg.outdir = kv.at("outdir");
    if (kv.count("record_every")) {
        cfg.record_every = static_cast<int>(parse_long("record_every", kv.at("record_every")));
        if (cfg.record_every < 0) throw ConfigError("record_every", "must be >= 0");
    }
    if (kv.count("seed"))
        cfg.seed = static_cast<unsigned>(parse_long("seed", kv.at("seed")));

    if (kv.count("solver_method")) {
        const std::string method = kv.at("solver_method");
        if (method == "newton_fd") cfg.solver.method = SolveMethod::NewtonFd;
        else if (method == "fixed_point") cfg.solver.method = SolveMethod::FixedPoint;
        else throw ConfigError("solver_method", "must be newton_fd or fixed_point");
    }
    if (kv.count("solver_tol")) {
        cfg.solver.tol = parse_double("solver_tol", kv.at("solver_tol"));
        if (!(cfg.solver.tol > 0.0)) throw ConfigError("solver_tol", "must be > 0");
    }
    if (kv.count("solver_max_iter")) {
        cfg.solver.max_iter = static_cast<int>(parse_long("solver_max_iter", kv.at("solver_max_iter")));
        if (cfg.solver.max_iter < 1) throw ConfigError("solver_max_iter", "must be >= 1");
    }
    if (kv.count("solver_fd_eps")) {
        cfg.solver.fd_eps = parse_double("solver_fd_eps", kv.at("solver_fd_eps"));
        if (!(cfg.solver.fd_eps > 0.0)) throw ConfigError("solver_fd_eps", "must be > 0");
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    return config_from_entries(read_config_file(path));
}

std::string manifest_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "version=" << kArtifactVersion << "\n";
    out << "problem=" << problem_name(cfg.problem) << "\n";
    out << "scheme=" << scheme_name(cfg.scheme) << "\n";
    if (cfg.problem == Problem::Hs) out << "L=" << fmt(cfg.L) << "\n";
    out << "N=" << cfg.N << "\n";
    out << "dt=" << fmt(cfg.dt) << "\n";
    out << "tend=" << fmt(cfg.tend) << "\n";
    out << "outdir=" << cfg.outdir << "\n";
    out << "record_every=" << cfg.record_every << "\n";
    out << "seed=" << cfg.seed << "\n";
    if (cfg.problem == Problem::Mhs) {
        out << "omega=" << fmt(cfg.omega) << "\n";
        out << "m=" << fmt(cfg.m) << "\n";
        out << "M=" << fmt(cfg.M) << "\n";
        out << "c=" << fmt(cfg.c) << "\n";
    } else if (cfg.problem == Problem::Hs2) {
        out << "b=" << fmt(cfg.b) << "\n";
        out << "z=" << fmt(cfg.z) << "\n";
        out << "Z=" << fmt(cfg.Z) << "\n";
        out << "c=" << fmt(cfg.c) << "\n";
        out << "kappa=" << cfg.kappa << "\n";
    }
    out << "solver_method="
        << (cfg.solver.method == SolveMethod::NewtonFd ? "newton_fd" : "fixed_point") << "\n";
    out << "solver_tol=" << fmt(cfg.solver.tol) << "\n";
    out << "solver_max_iter=" << cfg.solver.max_iter << "\n";
    out << "solver_fd_eps=" << fmt(cfg.solver.fd_eps) << "\n";
    return out.str();
}

namespace {

// One polymorphic stepping loop for the three problems.
struct Stepper {
    virtual ~Stepper() = default;
    virtual void step(double dt) = 0;
    virtual InvariantRow observe() const = 0;
    virtual ProfileSnapshot profile() const = 0;
};

std::vector<double> grid_coords(const Grid1D& grid) {
    std::vector<double> x(static_cast<std::size_t>(grid.num_nodes()));
    for (int i = 0; i < grid.num_nodes(); ++i) x[static_cast<std::size_t>(i)] = grid.node(i);
    return x;
}

struct HsStepper : Stepper {
    RunConfig cfg;
    HsState state;

    HsStepper(const RunConfig& c, const Grid1D& grid) : cfg(c) {
        Field u0 = make_field(grid);
        for (int i = 0; i <= grid.count; ++i) u0[i] = hs_exact(grid.node(i), 0.0);
        state = make_hs_state(u0);
    }
    void step(double dt) override {
        switch (cfg.scheme) {
            case Scheme::Eb1: state = eb1_step(state, dt); break;
            case Scheme::Eb2: state = eb2_step(state, dt); break;
            case Scheme::H1: state = h1_step(state, dt, cfg.solver); break;
            case Scheme::H2: state = h2_step(state, dt, cfg.solver); break;
            default: throw std::logic_error("hs stepper: bad scheme");
        }
    }
    InvariantRow observe() const override {
        const auto [h1, h2] = hs_invariants(state);
        InvariantRow row;
        row.t = state.t;
        row.h1 = h1;
        row.h2 = h2;
        row.mean_u = trapz_doubleprime(state.u) / (2.0 * state.u.grid.length);
        row.aux = checkerboard_amplitude(state.u);
        return row;
    }
    ProfileSnapshot profile() const override {
        ProfileSnapshot snap;
        snap.t = state.t;
        snap.x = grid_coords(state.u.grid);
        snap.u = state.u.values;
        snap.aux = hs_slope_field(state.u).values;  // ux column
        return snap;
    }
};

struct MhsStepper : Stepper {
    RunConfig cfg;
    MhsState state;
    CirculantPinv pinv;

    MhsStepper(const RunConfig& c, const TravellingWave& wave)
        : cfg(c),
          state(make_mhs_state(wave.phi, c.omega)),
          pinv(wave.grid, c.scheme == Scheme::Ms ? StencilKind::WideSecond
                                                 : StencilKind::NarrowSecond) {}
    void step(double dt) override {
        state = cfg.scheme == Scheme::Ms ? mhs_ms_step(state, dt, pinv)
                                         : mhs_h1_step(state, dt, pinv, cfg.solver);
    }
    InvariantRow observe() const override {
        const auto [h1, h2] = mhs_invariants(state);
        return {state.t, h1, h2, mean_constant_h(state.u),
                checkerboard_amplitude(state.u)};
    }
    ProfileSnapshot profile() const override {
        ProfileSnapshot snap;
        snap.t = state.t;
        snap.x = grid_coords(state.u.grid);
        snap.u = state.u.values;
        return snap;
    }
};

struct Hs2Stepper : Stepper {
    RunConfig cfg;
    Hs2State state;
    CirculantPinv pinv;

    Hs2Stepper(const RunConfig& c, const TravellingWave& wave)
        : cfg(c),
          state(make_hs2_state(wave.phi, *wave.psi, c.kappa)),
          pinv(wave.grid, c.scheme == Scheme::Ms ? StencilKind::WideSecond
                                                 : StencilKind::NarrowSecond) {}
    void step(double dt) override {
        state = cfg.scheme == Scheme::Ms ? hs2_ms_step(state, dt, pinv)
                                         : hs2_h1_step(state, dt, pinv, cfg.solver);
    }
    InvariantRow observe() const override {
        const auto [h1, h2] = hs2_invariants(state);
        return {state.t, h1, h2, mean_constant_h(state.u),
                checkerboard_amplitude(state.u)};
    }
    ProfileSnapshot profile() const override {
        ProfileSnapshot snap;
        snap.t = state.t;
        snap.x = grid_coords(state.u.grid);
        snap.u = state.u.values;
        snap.aux = state.rho.values;  // rho column
        return snap;
    }
};

}  // namespace

RunResult run_simulation(const RunConfig& cfg) {
    RunResult result;
    result.cfg = cfg;

    std::unique_ptr<Stepper> stepper;
    if (cfg.problem == Problem::Hs) {
        result.grid = build_grid(GridKind::HalfLineTruncated, cfg.L, cfg.N);
        stepper = std::make_unique<HsStepper>(cfg, result.grid);
    } else {
        result.wave = generate_wave(wave_spec_from(cfg), cfg.N);
        result.grid = result.wave->grid;
        if (cfg.problem == Problem::Mhs)
            stepper = std::make_unique<MhsStepper>(cfg, *result.wave);
        else
            stepper = std::make_unique<Hs2Stepper>(cfg, *result.wave);
    }

    const long nsteps = std::lround(cfg.tend / cfg.dt);
    result.series.push_back(stepper->observe());
    result.snapshots.push_back(stepper->profile());
    for (long k = 0; k < nsteps; ++k) {
        try {
            stepper->step(cfg.dt);
        } catch (const SolveFailure& e) {
            result.failure = FailureInfo{static_cast<int>(k), e.what()};
            break;
        } catch (const NumericsError& e) {
            result.failure = FailureInfo{static_cast<int>(k), e.what()};
            break;
        }
        result.series.push_back(stepper->observe());
        const bool strided = cfg.record_every > 0 && (k + 1) % cfg.record_every == 0;
        if (strided && k + 1 < nsteps) result.snapshots.push_back(stepper->profile());
    }
    if (!result.failure && nsteps > 0) result.snapshots.push_back(stepper->profile());
    return result;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_outputs(const RunResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    fs::create_directories(base);
    if (fs::exists(base / "invariants.csv"))
        throw OutputDirInUse("output directory already holds a run: " +
                             (base / "invariants.csv").string());

    std::ostringstream inv;
    inv << "t,H1,H2,mean_u\n";
    for (const auto& row : result.series)
        inv << fmt(row.t) << ',' << fmt(row.h1) << ',' << fmt(row.h2) << ','
            << fmt(row.mean_u) << "\n";
    write_text_file(base / "invariants.csv", inv.str());

    const Problem problem = result.cfg.problem;
    for (const auto& snap : result.snapshots) {
        std::ostringstream csv;
        const bool has_aux = !snap.aux.empty();
        csv << "x,u";
        if (has_aux) csv << (problem == Problem::Hs2 ? ",rho" : ",ux");
        const bool overlay = problem == Problem::Hs || result.wave.has_value();
        if (overlay) csv << ",u_exact";
        const bool rho_overlay = problem == Problem::Hs2 && result.wave.has_value();
        if (rho_overlay) csv << ",rho_exact";
        csv << "\n";
        for (std::size_t i = 0; i < snap.x.size(); ++i) {
            csv << fmt(snap.x[i]) << ',' << fmt(snap.u[i]);
            if (has_aux) csv << ',' << fmt(snap.aux[i]);
            if (overlay) {
                const double ue = problem == Problem::Hs
                                      ? hs_exact(snap.x[i], snap.t)
                                      : exact_shifted(*result.wave, snap.t, snap.x[i]);
                csv << ',' << fmt(ue);
            }
            if (rho_overlay)
                csv << ',' << fmt(exact_shifted_psi(*result.wave, snap.t, snap.x[i]));
            csv << "\n";
        }
        char name[64];
        std::snprintf(name, sizeof name, "profile_t%.6f.csv", snap.t);
        write_text_file(base / name, csv.str());
    }

    write_text_file(base / "manifest.txt", manifest_text(result.cfg));
}

}  // namespace hsint
