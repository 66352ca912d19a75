// Statistical checks of the samplers against closed-form moments. Tolerances
// sit at four-plus standard errors of each estimate so a correct sampler
// fails only with negligible probability, while a biased one fails loudly.

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "twinlab/error.hpp"
#include "twinlab/rng.hpp"

using namespace twinlab;

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

template <typename Draw>
Moments sample_moments(std::size_t n, Draw draw) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = static_cast<double>(draw());
    Moments m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(n);
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(n - 1);
    return m;
}

}  // namespace

TEST_CASE("identical seeds replay the identical stream") {
    Rng a(123456789), b(123456789), c(123456790);
    bool all_equal = true;
    bool any_differ = false;
    for (int k = 0; k < 1000; ++k) {
        const std::uint64_t va = a.next();
        all_equal = all_equal && va == b.next();
        any_differ = any_differ || va != c.next();
    }
    CHECK(all_equal);
    CHECK(any_differ);
}

TEST_CASE("uniform draws stay strictly inside the unit interval") {
    Rng rng(7);
    const std::size_t n = 200000;
    double lo = 1.0, hi = 0.0;
    double sum = 0.0, ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
        ss += u * u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    const double mean = sum / n;
    const double var = ss / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.006));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("gaussian draws have unit variance and zero mean") {
    Rng rng(11);
    const auto m = sample_moments(200000, [&] { return rng.gaussian(); });
    CHECK(std::abs(m.mean) < 0.012);
    CHECK(m.variance == doctest::Approx(1.0).epsilon(0.02));

    Rng rng2(12);
    const auto shifted =
        sample_moments(100000, [&] { return rng2.gaussian(10.0, 3.0); });
    CHECK(shifted.mean == doctest::Approx(10.0).epsilon(0.002));
    CHECK(shifted.variance == doctest::Approx(9.0).epsilon(0.03));
}

TEST_CASE("poisson draws are poissonian across both sampler regimes") {
    // Means below ten use inversion, larger means the transformed-rejection
    // sampler, and 40000 exercises it deep in the normal regime.
    const double means[] = {0.5, 3.0, 50.0, 600.0, 40000.0};
    Rng rng(202);
    for (const double mean : means) {
        CAPTURE(mean);
        const std::size_t n = mean > 1000 ? 40000 : 100000;
        const auto m = sample_moments(n, [&] { return rng.poisson(mean); });
        const double se_mean = std::sqrt(mean / static_cast<double>(n));
        CHECK(std::abs(m.mean - mean) < 5.0 * se_mean);
        const double fano = m.variance / m.mean;
        const double se_fano = std::sqrt(2.0 / static_cast<double>(n));
        CHECK(std::abs(fano - 1.0) < 5.0 * se_fano + 1.0 / mean * 0.01);
    }
    CHECK(rng.poisson(0.0) == 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), Error);
}

TEST_CASE("thermal draws have the Bose-Einstein variance mu(1+mu)") {
    Rng rng(303);
    for (const double mu : {0.2, 3.0, 30.0}) {
        CAPTURE(mu);
        const std::size_t n = 200000;
        const auto m = sample_moments(n, [&] { return rng.bose_einstein(mu); });
        const double var = mu * (1.0 + mu);
        const double se_mean = std::sqrt(var / static_cast<double>(n));
        CHECK(std::abs(m.mean - mu) < 5.0 * se_mean);
        // The squared coefficient of variation of the sample variance for a
        // geometric law approaches 8/n; five such deviations.
        CHECK(std::abs(m.variance / var - 1.0) <
              5.0 * std::sqrt(8.0 / static_cast<double>(n)));
    }
    CHECK(rng.bose_einstein(0.0) == 0);
}

TEST_CASE("pair counts follow the negative binomial law in both regimes") {
    SUBCASE("few modes: summed thermal draws") {
        Rng rng(404);
        const double mu = 30.0;
        const std::uint32_t modes = 4;
        const std::size_t n = 200000;
        const auto m =
            sample_moments(n, [&] { return rng.pair_count(mu, modes); });
        const double mean = mu * modes;
        const double var = modes * mu * (1.0 + mu);
        CHECK(std::abs(m.mean - mean) <
              5.0 * std::sqrt(var / static_cast<double>(n)));
        CHECK(m.variance == doctest::Approx(var).epsilon(0.05));
    }
    SUBCASE("many modes: gamma-mixed poisson") {
        Rng rng(505);
        const double mu = 2.0;
        const std::uint32_t modes = 300;
        const std::size_t n = 100000;
        const auto m =
            sample_moments(n, [&] { return rng.pair_count(mu, modes); });
        const double mean = mu * modes;
        const double var = modes * mu * (1.0 + mu);
        CHECK(std::abs(m.mean - mean) <
              5.0 * std::sqrt(var / static_cast<double>(n)));
        CHECK(m.variance == doctest::Approx(var).epsilon(0.05));
    }
    SUBCASE("single mode reduces to the thermal law") {
        Rng rng(606);
        const std::size_t n = 200000;
        const double mu = 5.0;
        const auto m =
            sample_moments(n, [&] { return rng.pair_count(mu, 1); });
        CHECK(m.variance / m.mean == doctest::Approx(1.0 + mu).epsilon(0.05));
    }
}

TEST_CASE("gamma moments match shape for shapes at and above one") {
    Rng rng(707);
    for (const double shape : {1.0, 2.5, 300.0}) {
        CAPTURE(shape);
        const std::size_t n = 100000;
        const auto m = sample_moments(n, [&] { return rng.gamma(shape); });
        CHECK(std::abs(m.mean - shape) <
              5.0 * std::sqrt(shape / static_cast<double>(n)));
        CHECK(m.variance == doctest::Approx(shape).epsilon(0.05));
    }
    CHECK_THROWS_AS(rng.gamma(0.5), Error);
}

TEST_CASE("derived seeds give unrelated streams") {
    const std::uint64_t root = 42;
    const std::uint64_t s0 = derive_seed(root, seed_tag::shot, 0);
    const std::uint64_t s1 = derive_seed(root, seed_tag::shot, 1);
    const std::uint64_t b0 = derive_seed(root, seed_tag::background, 0);
    CHECK(s0 != s1);
    CHECK(s0 != b0);
    CHECK(derive_seed(root + 1, seed_tag::shot, 0) != s0);

    Rng a(s0), b(s1);
    const std::size_t n = 100000;
    double sa = 0.0, sb = 0.0, sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ua = a.uniform();
        const double ub = b.uniform();
        sa += ua;
        sb += ub;
        sab += ua * ub;
        saa += ua * ua;
        sbb += ub * ub;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double va = saa / n - (sa / n) * (sa / n);
    const double vb = sbb / n - (sb / n) * (sb / n);
    const double corr = cov / std::sqrt(va * vb);
    CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("consecutive integer seeds still decorrelate") {
    Rng a(1), b(2);
    const std::size_t n = 100000;
    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        dot += (a.uniform() - 0.5) * (b.uniform() - 0.5);
    CHECK(std::abs(dot / n) < 5.0 / 12.0 / std::sqrt(static_cast<double>(n)));
}
