#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "pas4d/channel.hpp"
#include "pas4d/lut_dm.hpp"

using namespace pas4d;

TEST_CASE("the M=4 k=2 table keeps the right energy-12 tuples") {
    const LutDm dm = build_lut(build_ask(4), 2);
    // one energy-4 tuple, then three of the four energy-12 tuples; (3,1,1,1)
    // loses the lexicographic tie-break.
    const std::vector<AmplitudeTuple> expected{
        {{1, 1, 1, 1}}, {{1, 1, 1, 3}}, {{1, 1, 3, 1}}, {{1, 3, 1, 1}}};
    CHECK(dm.table == expected);
}

TEST_CASE("table sizes and k validation") {
    CHECK(build_lut(build_ask(16), 9).table.size() == 512);
    const AskAlphabet a4 = build_ask(4);
    CHECK(build_lut(a4, 4).table == quadrant_enumerate(a4));  // whole quadrant
    CHECK_THROWS_AS(build_lut(a4, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_lut(a4, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_lut(build_ask(16), 13), std::invalid_argument);
}

TEST_CASE("encode follows the table order") {
    const LutDm dm = build_lut(build_ask(4), 2);
    CHECK(lut_encode(dm, 0b00) == AmplitudeTuple{{1, 1, 1, 1}});
    CHECK(lut_encode(dm, 0b11) == AmplitudeTuple{{1, 3, 1, 1}});
    CHECK_THROWS_AS(lut_encode(dm, 4), std::invalid_argument);

    std::set<AmplitudeTuple> outputs;
    for (std::uint32_t b = 0; b < 4; ++b) outputs.insert(lut_encode(dm, b));
    CHECK(outputs.size() == 4);
}

TEST_CASE("decode rejects tuples outside the table") {
    const LutDm dm = build_lut(build_ask(4), 2);
    CHECK_THROWS_AS(lut_decode(dm, AmplitudeTuple{{3, 1, 1, 1}}), std::domain_error);
    CHECK_THROWS_AS(lut_decode(dm, AmplitudeTuple{{3, 3, 3, 3}}), std::domain_error);
    CHECK_THROWS_AS(lut_decode(dm, AmplitudeTuple{{2, 1, 1, 1}}), std::domain_error);
    CHECK(lut_decode(dm, lut_encode(dm, 0b10)) == 0b10);
}

TEST_CASE("exhaustive round trip for every k up to 12 at M=16") {
    const AskAlphabet ask = build_ask(16);
    for (int k = 1; k <= 12; ++k) {
        const LutDm dm = build_lut(ask, k);
        for (std::uint32_t b = 0; b < dm.table.size(); ++b) {
            REQUIRE(lut_decode(dm, lut_encode(dm, b)) == b);
        }
    }
}

TEST_CASE("energy optimality of the selected subset") {
    const AskAlphabet ask = build_ask(16);
    const auto all = quadrant_enumerate(ask);
    double prev_mean = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const LutDm dm = build_lut(ask, k);
        const int max_in = dm.table.back().energy();
        int min_out = all.back().energy();
        for (std::size_t i = dm.table.size(); i < all.size(); ++i)
            min_out = std::min(min_out, all[i].energy());
        CHECK(max_in <= min_out);

        double mean = 0.0;
        for (const auto& t : dm.table) mean += t.energy();
        mean /= static_cast<double>(dm.table.size());
        if (k > 1) CHECK(prev_mean <= mean + 1e-12);  // non-increasing as k decreases
        prev_mean = mean;
    }
}

TEST_CASE("lut_source: uniform law over signs x table") {
    const LutDm dm9 = build_lut(build_ask(16), 9);
    const ShapedSource s9 = lut_source(dm9);
    CHECK(s9.size() == 8192);
    CHECK(s9.entropy_bits == doctest::Approx(13.0).epsilon(1e-12));

    const ShapedSource s44 = lut_source(build_lut(build_ask(4), 4));
    CHECK(s44.size() == 256);
    CHECK(s44.entropy_bits == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(s44.product_per_dim);

    ShapedSource s42 = lut_source(build_lut(build_ask(4), 2));
    CHECK_FALSE(s42.product_per_dim);
    CHECK(s42.mean_energy_grid == doctest::Approx(10.0));  // (4+12+12+12)/4
    const double delta = normalize(s42);
    CHECK(delta == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(s42.mean_energy_signal() == doctest::Approx(2.0));

    double sum = 0.0;
    for (double p : s42.pmf) {
        CHECK(p == doctest::Approx(1.0 / 64.0));
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every sign pattern of every tuple appears exactly once") {
    const ShapedSource src = lut_source(build_lut(build_ask(4), 3));
    std::set<std::array<int, 4>> points;
    for (std::size_t i = 0; i < src.size(); ++i) {
        points.insert({src.level(i, 0), src.level(i, 1), src.level(i, 2), src.level(i, 3)});
    }
    CHECK(points.size() == src.size());
    for (const auto& p : points) {
        for (int d = 0; d < 4; ++d) CHECK(p[static_cast<std::size_t>(d)] % 2 != 0);
    }
}

TEST_CASE("csv dump layout") {
    const LutDm dm = build_lut(build_ask(4), 2);
    std::ostringstream os;
    write_lut_csv(dm, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "index,a1,a2,a3,a4,energy");
    std::getline(is, line);
    CHECK(line == "0,1,1,1,1,4");
    int rows = 1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 4);
}
