#include "doctest.h"
#include "twinlab/error.hpp"
#include "twinlab/stats.hpp"

using namespace twinlab;

TEST_CASE("population statistics of a four-pixel frame") {
    Frame f = make_frame(2, 2, 20.0);
    f.data = {4.0f, 6.0f, 5.0f, 5.0f};
    const RegionStats s = region_stats(f);
    CHECK(s.n == 4);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.variance == doctest::Approx(0.5));
    CHECK(fano(s) == doctest::Approx(0.1));
}

TEST_CASE("region statistics are restricted to the region") {
    Frame f = make_frame(4, 1, 20.0);
    f.data = {100.0f, 2.0f, 4.0f, 100.0f};
    const RegionStats s = region_stats(f, Region{1, 0, 2, 1});
    CHECK(s.n == 2);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.variance == doctest::Approx(1.0));
}

TEST_CASE("the Fano factor rejects a zero mean") {
    const Frame f = make_frame(2, 2, 20.0, 0.0f);
    CHECK_THROWS_AS(fano(region_stats(f)), Error);
}

TEST_CASE("background correction of the difference variance ratio") {
    const RegionStats bg_s{100.0, 100.0, 64};
    const RegionStats bg_i{100.0, 100.0, 64};

    SUBCASE("hand-computed value") {
        const Corrected c = sigma_corrected(500.0, 1000.0, bg_s, bg_i);
        CHECK(c.value == doctest::Approx(0.375));
        CHECK_FALSE(c.negative_numerator);
    }
    SUBCASE("a fluctuation below the background is reported, not clipped") {
        const Corrected c = sigma_corrected(150.0, 1000.0, bg_s, bg_i);
        CHECK(c.value == doctest::Approx(-50.0 / 800.0));
        CHECK(c.negative_numerator);
    }
    SUBCASE("non-positive corrected flux is a domain error") {
        CHECK_THROWS_AS(sigma_corrected(500.0, 150.0, bg_s, bg_i), Error);
    }
}

TEST_CASE("background correction of a single-arm Fano factor") {
    const RegionStats raw{700.0, 900.0, 64};
    const RegionStats bg{100.0, 100.0, 64};
    const Corrected c = fano_corrected(raw, bg);
    CHECK(c.value == doctest::Approx(800.0 / 600.0));
    CHECK_FALSE(c.negative_numerator);
    CHECK_THROWS_AS(fano_corrected(bg, raw), Error);
}
