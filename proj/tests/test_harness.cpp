#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hsint/harness.hpp"
#include "hsint/waves.hpp"

using namespace hsint;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("hsint_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ConfigEntries entries_from_string(const std::string& text, const TempDir& dir,
                                  const std::string& name) {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return read_config_file(p.string());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text)
        if (ch == '\n') ++n;
    return n;
}

RunConfig reference_hs_config(const std::string& outdir) {
    RunConfig cfg;
    cfg.problem = Problem::Hs;
    cfg.scheme = Scheme::Eb1;
    cfg.L = 6.0;
    cfg.N = 201;
    cfg.dt = 0.01;
    cfg.tend = 0.5;
    cfg.outdir = outdir;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing accepts the experiment settings") {
    TempDir dir("parse");
    const auto entries = entries_from_string(
        "problem=hs\nscheme=eb1\nL=6\nN=201\ndt=0.01\ntend=0.5\n", dir, "a.cfg");
    const RunConfig cfg = config_from_entries(entries);
    CHECK(cfg.problem == Problem::Hs);
    CHECK(cfg.scheme == Scheme::Eb1);
    CHECK(cfg.L == 6.0);
    CHECK(cfg.N == 201);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.tend == 0.5);
    CHECK(cfg.solver.tol == 1e-12);
}

TEST_CASE("periodic-only schemes are rejected for the half-line problem") {
    TempDir dir("reject");
    const auto entries = entries_from_string(
        "problem=hs\nscheme=ms\nL=6\nN=201\ndt=0.01\ntend=0.5\n", dir, "a.cfg");
    CHECK_THROWS_AS(config_from_entries(entries), ConfigError);
}

TEST_CASE("an empty config lists the missing keys") {
    TempDir dir("empty");
    const auto entries = entries_from_string("", dir, "a.cfg");
    try {
        config_from_entries(entries);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        for (const char* key : {"problem", "scheme", "N", "dt", "tend"})
            CHECK(what.find(key) != std::string::npos);
    }
}

TEST_CASE("unknown keys fail closed with a line number") {
    TempDir dir("unknown");
    try {
        entries_from_string("problem=hs\nbogus=1\n", dir, "a.cfg");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    try {
        entries_from_string("problem=hs\nnot a kv line\n", dir, "b.cfg");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("flags override file entries") {
    TempDir dir("override");
    auto entries = entries_from_string(
        "problem=hs\nscheme=eb1\nL=6\nN=201\ndt=0.01\ntend=0.5\n", dir, "a.cfg");
    entries.emplace_back("N", "101");
    const RunConfig cfg = config_from_entries(entries);
    CHECK(cfg.N == 101);
}

TEST_CASE("manifest round-trips through the parser") {
    TempDir dir("roundtrip");

    RunConfig hs = reference_hs_config("some/dir");
    hs.record_every = 10;
    hs.seed = 7;
    const auto hs_entries = entries_from_string(manifest_text(hs), dir, "hs.cfg");
    CHECK(config_from_entries(hs_entries) == hs);

    RunConfig mhs;
    mhs.problem = Problem::Mhs;
    mhs.scheme = Scheme::Ms;
    mhs.N = 256;
    mhs.dt = 0.02;
    mhs.tend = 3.5;
    mhs.omega = 1.5;
    mhs.m = -0.1;
    mhs.M = 0.5;
    mhs.c = 1.0;
    const auto mhs_entries = entries_from_string(manifest_text(mhs), dir, "mhs.cfg");
    CHECK(config_from_entries(mhs_entries) == mhs);

    RunConfig hs2;
    hs2.problem = Problem::Hs2;
    hs2.scheme = Scheme::H1;
    hs2.N = 512;
    hs2.dt = 0.1;
    hs2.tend = 1.0;
    hs2.b = 1.0;
    hs2.z = -1.0;
    hs2.Z = 1.0;
    hs2.c = 2.0;
    hs2.kappa = 1;
    hs2.solver.tol = 1e-13;
    const auto hs2_entries = entries_from_string(manifest_text(hs2), dir, "hs2.cfg");
    CHECK(config_from_entries(hs2_entries) == hs2);
}

TEST_CASE("zero-step runs return the initial level only") {
    RunConfig cfg = reference_hs_config("unused");
    cfg.tend = 0.0;
    const RunResult result = run_simulation(cfg);
    CHECK(result.series.size() == 1);
    CHECK(result.series[0].t == 0.0);
    CHECK(!result.failure);

    TempDir dir("zerostep");
    write_outputs(result, (dir.path / "out").string());
    const std::string inv = slurp(dir.path / "out" / "invariants.csv");
    CHECK(count_lines(inv) == 2);  // header + t=0 row
    CHECK(inv.rfind("t,H1,H2,mean_u\n", 0) == 0);
}

TEST_CASE("identical configs give byte-identical outputs") {
    RunConfig cfg;
    cfg.problem = Problem::Mhs;
    cfg.scheme = Scheme::Ms;
    cfg.N = 64;
    cfg.dt = 0.02;
    cfg.tend = 0.1;
    cfg.omega = 1.5;
    cfg.m = -0.1;
    cfg.M = 0.5;
    cfg.c = 1.0;
    cfg.record_every = 2;

    TempDir dir("determinism");
    const RunResult r1 = run_simulation(cfg);
    const RunResult r2 = run_simulation(cfg);
    write_outputs(r1, (dir.path / "a").string());
    write_outputs(r2, (dir.path / "b").string());
    for (const auto& entry : fs::directory_iterator(dir.path / "a")) {
        const auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(dir.path / "b" / name));
    }
    CHECK(fs::exists(dir.path / "a" / "manifest.txt"));
    CHECK(fs::exists(dir.path / "a" / "profile_t0.000000.csv"));
}

TEST_CASE("solver failure at step k leaves exactly k+1 rows") {
    RunConfig cfg = reference_hs_config("unused");
    cfg.scheme = Scheme::H1;
    cfg.solver.max_iter = 1;
    cfg.solver.tol = 1e-30;  // unreachable: fails during the first step
    const RunResult result = run_simulation(cfg);
    REQUIRE(result.failure.has_value());
    CHECK(result.failure->step == 0);
    CHECK(result.series.size() == 1);

    TempDir dir("failure");
    write_outputs(result, (dir.path / "out").string());
    const std::string inv = slurp(dir.path / "out" / "invariants.csv");
    CHECK(count_lines(inv) == 1 + static_cast<int>(result.series.size()));
}

TEST_CASE("instability detected mid-run leaves step+1 rows") {
    // eb1 with an absurd time step overflows after a few steps; the harness
    // must record every completed level and stamp the failing step
    RunConfig cfg = reference_hs_config("unused");
    cfg.dt = 10.0;
    cfg.tend = 200.0;
    const RunResult result = run_simulation(cfg);
    REQUIRE(result.failure.has_value());
    CHECK(result.failure->step > 0);
    CHECK(result.series.size() == static_cast<std::size_t>(result.failure->step) + 1);
    for (std::size_t i = 1; i < result.series.size(); ++i)
        CHECK(result.series[i].t > result.series[i - 1].t);
}

TEST_CASE("hs profiles carry the exact-solution overlay") {
    TempDir dir("overlay");
    RunConfig cfg = reference_hs_config((dir.path / "out").string());
    cfg.tend = 0.05;  // 5 steps is enough to exercise the writer
    const RunResult result = run_simulation(cfg);
    write_outputs(result, cfg.outdir);

    const std::string prof = slurp(dir.path / "out" / "profile_t0.050000.csv");
    std::istringstream in(prof);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,u,ux,u_exact");
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string sx, su, sux, sue;
        std::getline(row, sx, ',');
        std::getline(row, su, ',');
        std::getline(row, sux, ',');
        std::getline(row, sue, ',');
        CHECK(std::stod(sue) == doctest::Approx(hs_exact(std::stod(sx), 0.05)).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked == 202);
}

TEST_CASE("output directories are not reused") {
    TempDir dir("reuse");
    RunConfig cfg = reference_hs_config((dir.path / "out").string());
    cfg.tend = 0.0;
    const RunResult result = run_simulation(cfg);
    write_outputs(result, cfg.outdir);
    CHECK_THROWS(write_outputs(result, cfg.outdir));
}

TEST_CASE("every problem/scheme pair runs through the harness") {
    auto run_steps = [](RunConfig cfg) {
        cfg.tend = 2.0 * cfg.dt;
        const RunResult r = run_simulation(cfg);
        REQUIRE(!r.failure);
        CHECK(r.series.size() == 3);
        return r;
    };
    for (Scheme s : {Scheme::Eb1, Scheme::Eb2, Scheme::H1, Scheme::H2}) {
        RunConfig cfg = reference_hs_config("unused");
        cfg.scheme = s;
        cfg.dt = 0.01;
        run_steps(cfg);
    }
    for (Scheme s : {Scheme::Ms, Scheme::H1}) {
        RunConfig cfg;
        cfg.problem = Problem::Mhs;
        cfg.scheme = s;
        cfg.N = 64;
        cfg.dt = 0.02;
        cfg.omega = 1.5;
        cfg.m = -0.1;
        cfg.M = 0.5;
        cfg.c = 1.0;
        run_steps(cfg);

        RunConfig cfg2;
        cfg2.problem = Problem::Hs2;
        cfg2.scheme = s;
        cfg2.N = 64;
        cfg2.dt = 0.05;
        cfg2.b = 1.0;
        cfg2.z = -1.0;
        cfg2.Z = 1.0;
        cfg2.c = 2.0;
        run_steps(cfg2);
    }
}

TEST_CASE("concurrent simulations match their serial runs") {
    RunConfig a = reference_hs_config("unused");
    a.tend = 0.05;
    RunConfig b;
    b.problem = Problem::Mhs;
    b.scheme = Scheme::Ms;
    b.N = 64;
    b.dt = 0.02;
    b.tend = 0.1;
    b.omega = 1.5;
    b.m = -0.1;
    b.M = 0.5;
    b.c = 1.0;

    const RunResult serial_a = run_simulation(a);
    const RunResult serial_b = run_simulation(b);
    RunResult threaded_a, threaded_b;
    std::thread ta([&] { threaded_a = run_simulation(a); });
    std::thread tb([&] { threaded_b = run_simulation(b); });
    ta.join();
    tb.join();
    REQUIRE(threaded_a.series.size() == serial_a.series.size());
    REQUIRE(threaded_b.series.size() == serial_b.series.size());
    for (std::size_t i = 0; i < serial_a.series.size(); ++i)
        CHECK(threaded_a.series[i].h1 == serial_a.series[i].h1);
    for (std::size_t i = 0; i < serial_b.series.size(); ++i)
        CHECK(threaded_b.series[i].h1 == serial_b.series[i].h1);
}

TEST_CASE("periodic problems reject an explicit domain length") {
    TempDir dir("autoL");
    const auto entries = entries_from_string(
        "problem=mhs\nscheme=ms\nN=64\ndt=0.02\ntend=0.1\nomega=1.5\nm=-0.1\nM=0.5\nc=1\nL=3\n",
        dir, "a.cfg");
    CHECK_THROWS_AS(config_from_entries(entries), ConfigError);
}
