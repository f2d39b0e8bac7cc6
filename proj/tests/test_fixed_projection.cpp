#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "admmlp/fixed_projection.hpp"
#include "admmlp/projection.hpp"
#include "admmlp/rng.hpp"

using namespace admmlp;

namespace {

// Random raw vector in the check-sum format covering most of its range.
std::vector<std::int64_t> random_raw(int d, Rng& rng, const QFormat& fmt) {
    std::vector<std::int64_t> v(d);
    for (auto& x : v)
        x = static_cast<std::int64_t>(rng.below(2 * fmt.max_raw() + 1)) - fmt.max_raw();
    return v;
}

std::vector<double> to_double(const std::vector<std::int64_t>& raw, int frac) {
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = static_cast<double>(raw[i]) * std::pow(2.0, -frac);
    return out;
}

}  // namespace

TEST_CASE("index reciprocals") {
    CHECK(fixed::index_reciprocal_raw(1) == (1 << 24));
    CHECK(fixed::index_reciprocal_raw(2) == (1 << 23));
    CHECK(fixed::index_reciprocal_raw(3) == 5592405);
    CHECK(fixed::index_reciprocal_raw(4) == (1 << 22));
    CHECK(fixed::index_reciprocal_raw(5) == 3355443);
    CHECK(fixed::index_reciprocal_raw(6) == 2796203);
}

TEST_CASE("fixed simplex projection tracks the double implementation") {
    FixedProfile prof;
    fixed::Projector proj(prof);
    Rng rng(404);
    int frac = prof.transformed.frac_bits;
    for (int trial = 0; trial < 3000; ++trial) {
        int d = 2 + static_cast<int>(rng.below(15));
        auto v = random_raw(d, rng, prof.transformed);
        std::vector<std::int64_t> out(d);
        proj.project_simplex(v, out);
        auto ref = project_centered_simplex(to_double(v, frac));
        for (int i = 0; i < d; ++i) {
            double got = static_cast<double>(out[i]) *
                         std::pow(2.0, -prof.simplex_out.frac_bits);
            // One output rounding plus the Q0.24 reciprocal error.
            REQUIRE(std::abs(got - ref[i]) <= std::pow(2.0, -prof.simplex_out.frac_bits));
        }
    }
}

TEST_CASE("fixed parity polytope projection tracks the double implementation") {
    FixedProfile prof;
    fixed::Projector proj(prof);
    Rng rng(505);
    int in_frac = prof.check_sum.frac_bits;
    std::int64_t half_out = std::int64_t(1) << (prof.replica.frac_bits - 1);
    for (int trial = 0; trial < 3000; ++trial) {
        int d = 2 + static_cast<int>(rng.below(15));
        auto v = random_raw(d, rng, prof.check_sum);
        std::vector<std::int64_t> out(d);
        proj.project_parity_polytope(v, out);
        auto ref = project_parity_polytope(to_double(v, in_frac));
        for (int i = 0; i < d; ++i) {
            REQUIRE(std::abs(out[i]) <= half_out);  // z stays in [-1/2, 1/2]
            double got = static_cast<double>(out[i]) *
                         std::pow(2.0, -prof.replica.frac_bits);
            REQUIRE(std::abs(got - ref[i]) <= std::pow(2.0, -prof.replica.frac_bits + 1));
        }
    }
}

TEST_CASE("fixed projection passes members through exactly") {
    FixedProfile prof;
    fixed::Projector proj(prof);
    int in_frac = prof.check_sum.frac_bits;
    int ext = prof.replica.frac_bits - in_frac;
    // An interior point (raw ninths of 1/2) maps to its zero-extension.
    std::vector<std::int64_t> v{100, -50, 25, 3};
    std::vector<std::int64_t> out(4);
    proj.project_parity_polytope(v, out);
    for (int i = 0; i < 4; ++i) REQUIRE(out[i] == v[i] << ext);

    // Outside the cube but inside the polytope after clipping.
    std::int64_t half_in = std::int64_t(1) << (in_frac - 1);
    std::vector<std::int64_t> big{half_in + 40, -half_in - 7, half_in + 1, -half_in};
    proj.project_parity_polytope(big, out);
    REQUIRE(out[0] == half_in << ext);
    REQUIRE(out[1] == -half_in << ext);
    REQUIRE(out[2] == half_in << ext);
    REQUIRE(out[3] == -half_in << ext);
}

TEST_CASE("fixed projection is deterministic") {
    FixedProfile prof;
    fixed::Projector a(prof), b(prof);
    Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng.below(15));
        auto v = random_raw(d, rng, prof.check_sum);
        std::vector<std::int64_t> o1(d), o2(d);
        a.project_parity_polytope(v, o1);
        b.project_parity_polytope(v, o2);
        REQUIRE(o1 == o2);
    }
}

TEST_CASE("profile validation") {
    FixedProfile bad;
    bad.transformed = QFormat(4, 8);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    FixedProfile bad2;
    bad2.llr = QFormat(0, 6);
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}
