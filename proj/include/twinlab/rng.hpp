#pragma once

#include <cstdint>

namespace twinlab {

// All randomness in a campaign flows from one root seed. Streams for shots,
// background frames and the frozen efficiency fields are derived with
// derive_seed(root, tag, index) so that any shot can be regenerated in
// isolation and campaigns are reproducible bit for bit.
namespace seed_tag {
constexpr std::uint64_t shot = 0x73686f74u;        // twin shot index i
constexpr std::uint64_t background = 0x62676e64u;  // background shot index i
constexpr std::uint64_t coherent = 0x636f6872u;    // coherent shot index i
constexpr std::uint64_t eta_field = 0x65746131u;   // arm index 0 / 1
constexpr std::uint64_t campaign = 0x63616d70u;    // per-sweep-value streams
}  // namespace seed_tag

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                          std::uint64_t index);

// xoshiro256++ with distribution samplers sufficient for the photon model.
// Sequences are fully determined by the seed; every sampler consumes the
// stream in a fixed order, so a given build replays byte-identically.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }

    double gaussian();
    double gaussian(double mean, double sigma);

    // Exact Poisson sampling for any non-negative mean (inversion below
    // mean 10, transformed rejection above).
    long long poisson(double mean);

    // Thermal (Bose-Einstein) occupation with the given mean.
    long long bose_einstein(double mu);

    // Sum of `modes` independent Bose-Einstein draws of mean mu, i.e. a
    // negative binomial count. Large mode numbers use the exact
    // gamma-Poisson mixture representation of the same distribution.
    long long pair_count(double mu, std::uint32_t modes);

    // Marsaglia-Tsang gamma variate, unit scale, shape >= 1.
    double gamma(double shape);

private:
    long long poisson_inversion(double mean);
    long long poisson_ptrd(double mean);

    std::uint64_t s_[4];
    double spare_gauss_ = 0.0;
    bool has_spare_gauss_ = false;
};

}  // namespace twinlab
