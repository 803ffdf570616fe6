#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace hydro;
namespace fs = std::filesystem;

namespace {

std::string tmp(const char* name) { return (fs::temp_directory_path() / name).string(); }

std::vector<double> rnd(size_t n, uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto& x : v) x = g(gen);
    return v;
}

} // namespace

TEST_CASE("snapshot round trip is bitwise") {
    SnapshotHeader h;
    h.domain = {0.75, 8, 10, 6, GammaD::Upper};
    h.time = 0.125;
    h.dt = 1e-3;
    size_t n = 8 * 10 * 6;
    auto g1 = rnd(n, 1), g2 = rnd(n, 2);
    std::string path = tmp("roundtrip.bin");
    write_snapshot(path, h, g1, g2);

    std::vector<double> r1, r2;
    SnapshotHeader h2 = read_snapshot(path, r1, r2);
    CHECK(h2.domain == h.domain);
    CHECK(h2.time == h.time);
    CHECK(h2.dt == h.dt);
    CHECK(r1 == g1);
    CHECK(r2 == g2);
}

TEST_CASE("corrupt magic is rejected") {
    SnapshotHeader h;
    h.domain = {1.0, 8, 8, 8, GammaD::Empty};
    size_t n = 8 * 8 * 8;
    auto g = rnd(n, 3);
    std::string path = tmp("magic.bin");
    write_snapshot(path, h, g, g);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("BROKEN!", 7);
    }
    std::vector<double> r1, r2;
    CHECK_THROWS_AS(read_snapshot(path, r1, r2), HydroError);
}

TEST_CASE("truncated payload is rejected") {
    SnapshotHeader h;
    h.domain = {1.0, 8, 8, 8, GammaD::Empty};
    size_t n = 8 * 8 * 8;
    auto g = rnd(n, 4);
    std::string path = tmp("trunc.bin");
    write_snapshot(path, h, g, g);
    fs::resize_file(path, fs::file_size(path) - 128);
    std::vector<double> r1, r2;
    CHECK_THROWS_AS(read_snapshot(path, r1, r2), HydroError);
}

TEST_CASE("size mismatch on write is rejected") {
    SnapshotHeader h;
    h.domain = {1.0, 8, 8, 8, GammaD::Empty};
    std::vector<double> bad(10, 0.0);
    CHECK_THROWS_AS(write_snapshot(tmp("bad.bin"), h, bad, bad), HydroError);
}

TEST_CASE("diagnostics writer: header, schema, monotone read-back") {
    std::string path = tmp("diag.csv");
    DiagWriter w(path, {"a", "b"});
    w.append(0.0, {1.0, 2.0});
    w.append(0.5, {3.0, 4.0});
    w.append(1.0, {5.0, 6.0});
    CHECK_THROWS_AS(w.append(1.5, {1.0}), HydroError);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "time,a,b");
    double prev = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        double t;
        char comma;
        ss >> t >> comma;
        CHECK(t > prev);
        prev = t;
        ++rows;
    }
    CHECK(rows == 3);
}
