#include <catch2/catch_amalgamated.hpp>

#include "admmlp/qformat.hpp"
#include "admmlp/rng.hpp"

using namespace admmlp;

TEST_CASE("quantize basics") {
    // round(0.3 * 128) = 38
    FixedValue q = quantize(0.3, QFormat(0, 7));
    CHECK(q.raw == 38);
    CHECK(q.value() == Catch::Approx(0.296875).margin(0));

    CHECK(quantize(0.0, QFormat(2, 7)).raw == 0);
    CHECK(quantize(0.0, QFormat(0, 13)).raw == 0);

    // saturation at the format maximum
    CHECK(quantize(5.0, QFormat(0, 7)).raw == 127);
    CHECK(quantize(-5.0, QFormat(0, 7)).raw == -127);
}

TEST_CASE("quantize symmetry and accuracy") {
    Rng rng(1234);
    QFormat fmts[] = {QFormat(0, 7), QFormat(2, 7), QFormat(0, 12), QFormat(4, 9)};
    for (int trial = 0; trial < 100000; ++trial) {
        double x = (rng.uniform() - 0.5) * 40.0;
        const QFormat& fmt = fmts[trial % 4];
        FixedValue pos = quantize(x, fmt);
        FixedValue neg = quantize(-x, fmt);
        REQUIRE(neg.raw == -pos.raw);
        if (std::abs(x) < fmt.max_value())
            REQUIRE(std::abs(pos.value() - x) <= std::pow(2.0, -fmt.frac_bits - 1));
    }
}

TEST_CASE("rounding ties go away from zero") {
    // 0.5 LSB above a representable point
    CHECK(quantize(1.5 / 128.0, QFormat(0, 7)).raw == 2);
    CHECK(quantize(-1.5 / 128.0, QFormat(0, 7)).raw == -2);
    CHECK(round_shift_right(3, 1) == 2);
    CHECK(round_shift_right(-3, 1) == -2);
    CHECK(round_shift_right(1, 1) == 1);
    CHECK(round_shift_right(-1, 1) == -1);
}

TEST_CASE("add aligns fraction bits exactly") {
    FixedValue a = quantize(0.25, QFormat(0, 7));
    FixedValue sum = add(a, a, QFormat(1, 7));
    CHECK(sum.value() == 0.5);

    FixedValue top = quantize(127.0 / 128.0, QFormat(0, 7));
    CHECK(add(top, top, QFormat(0, 7)).raw == 127);  // saturates

    FixedValue b = quantize(1.5, QFormat(2, 7));
    FixedValue c = quantize(0.25, QFormat(0, 9));
    FixedValue s = add(b, c, QFormat(3, 9));
    CHECK(s.value() == 1.75);
}

TEST_CASE("resize rounds and saturates") {
    CHECK(resize(quantize(0.5, QFormat(0, 12)), QFormat(0, 9)).value() == 0.5);
    CHECK(resize(quantize(-0.5, QFormat(0, 7)), QFormat(0, 9)).value() == -0.5);

    // 3.9 in Q3.9 is raw 1997; dropping two fraction bits rounds to 499.
    FixedValue v = quantize(3.9, QFormat(3, 9));
    REQUIRE(v.raw == 1997);
    FixedValue r = resize(v, QFormat(2, 7));
    CHECK(r.raw == 499);
    CHECK(r.value() == Catch::Approx(3.8984375).margin(0));
}

TEST_CASE("arithmetic never leaves the format range") {
    Rng rng(77);
    for (int trial = 0; trial < 20000; ++trial) {
        QFormat in(static_cast<int>(rng.below(5)), 4 + static_cast<int>(rng.below(10)));
        QFormat out(static_cast<int>(rng.below(5)), 4 + static_cast<int>(rng.below(10)));
        FixedValue a = quantize((rng.uniform() - 0.5) * 100.0, in);
        FixedValue b = quantize((rng.uniform() - 0.5) * 100.0, in);
        FixedValue s = add(a, b, out);
        REQUIRE(s.raw <= out.max_raw());
        REQUIRE(s.raw >= out.min_raw());
        FixedValue r = resize(a, out);
        REQUIRE(r.raw <= out.max_raw());
        REQUIRE(r.raw >= out.min_raw());
    }
}

TEST_CASE("reciprocal multiply") {
    FixedValue a = quantize(0.9, QFormat(5, 7));
    REQUIRE(a.raw == 115);
    FixedValue r3 = reciprocal_q24(3);
    CHECK(r3.raw == 5592405);
    FixedValue x = mul_reciprocal(a, r3, QFormat(0, 9));
    CHECK(std::abs(x.value() - 0.3) < std::pow(2.0, -7));

    // power-of-two degree: the reciprocal is exact, so the multiply equals a
    // bit shift
    FixedValue r4 = reciprocal_q24(4);
    CHECK(r4.raw == (1 << 22));
    FixedValue y = quantize(1.25, QFormat(5, 7));
    FixedValue shifted = mul_reciprocal(y, r4, QFormat(0, 9));
    CHECK(shifted.value() == 1.25 / 4.0);

    CHECK(mul_reciprocal(FixedValue{0, QFormat(5, 7)}, r3, QFormat(0, 9)).raw == 0);
    CHECK_THROWS_AS(reciprocal_q24(1), std::invalid_argument);
}

TEST_CASE("format strings parse and print") {
    CHECK(QFormat(2, 7).to_string() == "Q2.7");
    CHECK(QFormat::parse("Q2.7") == QFormat(2, 7));
    CHECK(QFormat::parse("Q0.13") == QFormat(0, 13));
    CHECK_THROWS_AS(QFormat::parse("2.7"), std::invalid_argument);
    CHECK_THROWS_AS(QFormat::parse("Q27"), std::invalid_argument);
}

TEST_CASE("datapath formats round-trip every representable value") {
    // The nine formats of the bit-accurate profile.
    const char* names[] = {"Q0.7", "Q4.7", "Q5.7", "Q0.9", "Q2.7",
                           "Q3.9", "Q0.12", "Q4.9", "Q0.13"};
    for (const char* name : names) {
        QFormat fmt = QFormat::parse(name);
        REQUIRE(fmt.to_string() == name);
        for (std::int64_t raw = fmt.min_raw(); raw <= fmt.max_raw(); ++raw) {
            FixedValue v{raw, fmt};
            REQUIRE(quantize(v.value(), fmt).raw == raw);
        }
    }
}
