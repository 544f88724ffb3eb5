#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lislim {

// splitmix64, used only to mix seeds for substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. Substreams derived from (master seed, tag)
// are independent for distinct tags, so shard results do not depend on
// scheduling order.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(mix(seed, 0)) {}
    RandomStream(std::uint64_t master, std::uint64_t tag) : gen_(mix(master, tag)) {}

    std::uint64_t bits() { return gen_(); }

    // uniform on (0, 1]
    double uniform01() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal, Box-Muller pairs
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // index in [0, cdf.size()) from a cumulative probability vector
    int discrete(const std::vector<double>& cdf) {
        const double u = uniform01();
        int i = 0;
        const int last = static_cast<int>(cdf.size()) - 1;
        while (i < last && u > cdf[static_cast<std::size_t>(i)]) ++i;
        return i;
    }

  private:
    static std::uint64_t mix(std::uint64_t master, std::uint64_t tag) {
        std::uint64_t s = master;
        std::uint64_t a = splitmix64(s);
        s ^= tag * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = splitmix64(s);
        return a ^ (b + 0x9e3779b97f4a7c15ULL);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lislim
