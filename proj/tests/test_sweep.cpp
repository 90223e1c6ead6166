#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "coho/sweep.hpp"

using namespace coho;
using namespace coho::sweep;

namespace {

constexpr double pi = std::numbers::pi;

struct Row {
    double eta, theta, u, value;
    std::string quantity;
};

std::vector<Row> parse(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        std::istringstream f(line);
        std::string a, b, c, q, v;
        std::getline(f, a, ',');
        std::getline(f, b, ',');
        std::getline(f, c, ',');
        std::getline(f, q, ',');
        std::getline(f, v, ',');
        rows.push_back({std::stod(a), std::stod(b), std::stod(c), std::stod(v), q});
    }
    return rows;
}

SweepSpec small_spec() {
    SweepSpec s;
    s.outer = {Axis::eta, -2.0, 2.0, 9};
    s.inner = {Axis::u, 0.5, 4.0, 7};
    s.theta = pi / 3;
    s.quantity = Quantity::parse("S3");
    return s;
}

}  // namespace

TEST_CASE("axis values are symmetric with exact endpoints") {
    const auto v = axis_values({Axis::eta, -5.0, 5.0, 201});
    REQUIRE(v.size() == 201);
    CHECK(v.front() == -5.0);
    CHECK(v.back() == 5.0);
    CHECK(v[100] == 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == -v[200 - i]);
    const auto t = axis_values({Axis::theta, 0.0, 2 * pi, 201});
    CHECK(t[50] == pi / 2);
    CHECK(t[100] == pi);
}

TEST_CASE("csv layout and row count") {
    const auto spec = small_spec();
    const std::string csv = render_csv(spec, 1);
    CHECK(csv.rfind("eta,theta,u,quantity,value\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    const auto rows = parse(csv);
    REQUIRE(rows.size() == spec.rows());
    CHECK(rows.size() == 63);
    // outer axis outermost
    CHECK(rows[0].eta == -2.0);
    CHECK(rows[6].eta == -2.0);
    CHECK(rows[7].eta == -1.5);
    CHECK(rows[0].u == 0.5);
    CHECK(rows[1].u > rows[0].u);
    for (const auto &r : rows) {
        CHECK(r.quantity == "S3");
        CHECK_THAT(r.value, Catch::Matchers::WithinRel(renyi3(purity(ReducedPoint(r.eta, r.theta, r.u))), 1e-11));
    }
}

TEST_CASE("csv is identical for any worker count") {
    const auto spec = small_spec();
    const std::string one = render_csv(spec, 1);
    CHECK(render_csv(spec, 3) == one);
    CHECK(render_csv(spec, 16) == one);
    CHECK(render_csv(spec, 0) == one);
}

TEST_CASE("quantity selection") {
    auto spec = small_spec();
    spec.quantity = Quantity::parse("Sq", 2.5);
    const auto rows = parse(render_csv(spec, 1));
    CHECK(rows[0].quantity == "Sq(2.5)");
    CHECK_THAT(rows[5].value,
               Catch::Matchers::WithinRel(renyi(purity(ReducedPoint(rows[5].eta, pi / 3, rows[5].u)), 2.5), 1e-11));
    CHECK_THROWS_AS(Quantity::parse("S4"), InvalidInput);
    CHECK_THROWS_AS(Quantity::parse("Sq", 1.0).validate(), OrderNearOne);
}

TEST_CASE("invalid sweep specs are rejected") {
    auto s = small_spec();
    s.inner.axis = Axis::eta;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small_spec();
    s.outer.count = 1;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small_spec();
    s.inner.count = 4097;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small_spec();
    s.inner.start = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small_spec();
    s.theta = INFINITY;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    CHECK_THROWS_AS(parse_axis("beta"), InvalidInput);
}

TEST_CASE("presets") {
    for (int fig = 1; fig <= 6; ++fig) {
        const auto files = preset(fig);
        REQUIRE(files.size() == 4);
        for (const auto &f : files) {
            CHECK_NOTHROW(f.spec.validate());
            CHECK(f.spec.rows() == 201u * 201u);
            CHECK(f.file_name.rfind("fig" + std::to_string(fig) + "_", 0) == 0);
            CHECK(f.spec.quantity.kind == (fig <= 3 ? Quantity::Kind::S3 : Quantity::Kind::S1));
        }
    }
    CHECK(preset(1)[3].spec.u == 10.0);
    CHECK(preset(5)[3].spec.eta == 4.0);
    CHECK(preset(6)[0].spec.theta == pi / 2);
    CHECK_THROWS_AS(preset(7), InvalidInput);
}

TEST_CASE("atomic write leaves no partial file") {
    const auto dir = std::filesystem::temp_directory_path() / "coho_sweep_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    write_atomic(path, "abc\n");
    write_atomic(path, "def\n");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    CHECK(s == "def\n");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.partial"));
    CHECK_THROWS_AS(write_atomic(dir / "missing" / "x.csv", "x"), InvalidInput);
    std::filesystem::remove_all(dir);
}
