#pragma once

#include <cstdint>
#include <random>

namespace labourflow {

// Seeded generator for one simulation run. Outputs are reproducible for
// a given binary; no cross-platform stream stability is promised.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    long long binomial(long long n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        std::binomial_distribution<long long> dist(n, p);
        return dist(gen_);
    }

    std::size_t uniform_index(std::size_t n) {
        if (n <= 1) return 0;
        std::uniform_int_distribution<std::size_t> dist(0, n - 1);
        return dist(gen_);
    }

    double uniform01() {
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        return dist(gen_);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform01() < p;
    }

    std::mt19937_64& raw() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace labourflow
