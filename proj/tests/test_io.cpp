#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <filesystem>
#include <random>

#include "frontlab/config.hpp"
#include "frontlab/io.hpp"

using namespace frontlab;

TEST_CASE("config: sections, types, arrays, canonical hash") {
    std::string text =
        "# comment\n"
        "[run]\n"
        "t_end = 2000\n"
        "dt = 0.02\n"
        "frame = \"moving\"\n"
        "verbose = true\n"
        "xs = [1, 6, 36]\n";
    auto c = Config::parse(text);
    REQUIRE(c.require_double("run.t_end") == 2000.0);
    REQUIRE(c.get_double("run.dt", 0.0) == 0.02);
    REQUIRE(c.get_double("run.absent", 1.5) == 1.5);
    REQUIRE(c.get_string("run.frame", "") == "moving");
    REQUIRE(c.get_bool("run.verbose", false));
    auto xs = c.get_array("run.xs", {});
    REQUIRE(xs.size() == 3);
    REQUIRE(xs[1] == 6.0);

    // same content in different order hashes identically
    auto c2 = Config::parse("[run]\ndt = 0.02\nt_end = 2000\nframe = \"moving\"\n"
                            "verbose = true\nxs = [1, 6, 36]\n");
    REQUIRE(c.hash() == c2.hash());
}

TEST_CASE("config: diagnostics name the line and key") {
    auto c = Config::parse("[run]\ndt = fast\n");
    try {
        c.require_double("run.dt");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        REQUIRE(msg.find("line 2") != std::string::npos);
        REQUIRE(msg.find("run.dt") != std::string::npos);
    }
    REQUIRE_THROWS_AS(Config::parse("[run\n"), ConfigError);
    REQUIRE_THROWS_AS(Config::parse("novalue =\n"), ConfigError);

    auto c3 = Config::parse("[run]\ntypo_key = 1\n");
    REQUIRE_THROWS_AS(c3.validate_keys({"run.dt"}), ConfigError);
    REQUIRE_NOTHROW(c3.validate_keys({"run.typo_key"}));
}

TEST_CASE("io: field dump round-trips bit-exactly") {
    Grid2D g{Grid1D(-3.0, 5.0, 64), Grid1D(0.0, 2.0, 8)};
    Field2D f(g, Frame::moving);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (auto& v : f.values) v = U(rng);

    auto dir = std::filesystem::temp_directory_path() / "frontlab_io_test";
    std::filesystem::create_directories(dir);
    auto base = dir / "field_t10";
    dump_field(base, f, 10.0, {{"scenario", "unit-test"}});
    auto f2 = load_field(base);
    REQUIRE(f2.nx() == f.nx());
    REQUIRE(f2.ny() == f.ny());
    REQUIRE(f2.frame == Frame::moving);
    REQUIRE(std::memcmp(f.values.data(), f2.values.data(),
                        f.values.size() * sizeof(double)) == 0);
}

TEST_CASE("io: csv numbers survive a round trip through text") {
    auto dir = std::filesystem::temp_directory_path() / "frontlab_io_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "vals.csv";
    std::vector<std::vector<double>> rows{{1.0 / 3.0, 2e-17}, {-1.2345678901234567, 3.0}};
    write_csv(path, {"a", "b"}, rows);
    std::ifstream in(path);
    std::string header, l1, l2;
    std::getline(in, header);
    std::getline(in, l1);
    std::getline(in, l2);
    REQUIRE(header == "a,b");
    double a, b;
    REQUIRE(std::sscanf(l1.c_str(), "%lf,%lf", &a, &b) == 2);
    REQUIRE(a == rows[0][0]);
    REQUIRE(b == rows[0][1]);
    REQUIRE(std::sscanf(l2.c_str(), "%lf,%lf", &a, &b) == 2);
    REQUIRE(a == rows[1][0]);
    REQUIRE(b == rows[1][1]);
}
