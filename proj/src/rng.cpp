#include "twinlab/rng.hpp"

#include <cmath>

#include "twinlab/error.hpp"

namespace twinlab {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                          std::uint64_t index) {
    std::uint64_t state = root ^ (tag * kGolden);
    std::uint64_t a = splitmix64(state);
    state ^= index * 0xbf58476d1ce4e5b9ull;
    std::uint64_t b = splitmix64(state);
    return a ^ rotl(b, 32);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return (double(next() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_gauss_) {
        has_spare_gauss_ = false;
        return spare_gauss_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586476925286766559 * uniform();
    spare_gauss_ = r * std::sin(t);
    has_spare_gauss_ = true;
    return r * std::cos(t);
}

double Rng::gaussian(double mean, double sigma) {
    return mean + sigma * gaussian();
}

long long Rng::poisson(double mean) {
    if (!(mean >= 0.0))
        throw Error(ErrorCategory::domain, "poisson mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(mean);
    return poisson_ptrd(mean);
}

long long Rng::poisson_inversion(double mean) {
    const double target = uniform();
    double p = std::exp(-mean);
    double cum = p;
    long long k = 0;
    while (target > cum && k < 512) {
        ++k;
        p *= mean / double(k);
        cum += p;
    }
    return k;
}

// Hoermann's PTRD transformed-rejection sampler, exact for mean >= 10.
long long Rng::poisson_ptrd(double mean) {
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);

    for (;;) {
        double u = uniform() - 0.5;
        double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return (long long)k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * log_mean - mean - std::lgamma(k + 1.0))
            return (long long)k;
    }
}

long long Rng::bose_einstein(double mu) {
    if (!(mu >= 0.0))
        throw Error(ErrorCategory::domain, "mode occupation must be >= 0");
    if (mu == 0.0) return 0;
    // Geometric tail: P(k) = (1/(1+mu)) (mu/(1+mu))^k.
    return (long long)std::floor(std::log(uniform()) /
                                 std::log(mu / (1.0 + mu)));
}

long long Rng::pair_count(double mu, std::uint32_t modes) {
    if (modes == 0 || mu == 0.0) return 0;
    if (modes <= 64) {
        long long total = 0;
        for (std::uint32_t m = 0; m < modes; ++m) total += bose_einstein(mu);
        return total;
    }
    return poisson(gamma(double(modes)) * mu);
}

double Rng::gamma(double shape) {
    if (!(shape >= 1.0))
        throw Error(ErrorCategory::domain, "gamma sampler requires shape >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = gaussian();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace twinlab
