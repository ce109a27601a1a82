#ifndef V2X_RNG_HPP
#define V2X_RNG_HPP

#include <cstdint>
#include <random>

namespace v2x {

/// Purpose tag for a random substream. Each (node, purpose) pair draws from
/// its own generator so that unrelated parts of a run do not perturb each
/// other's sequences across configurations.
enum class RngPurpose : std::uint64_t {
    Placement = 1,
    Turn = 2,
    Shadowing = 3,
    Los = 4,
    Backoff = 5,
    Phase = 6,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic stream keyed by (master seed, node id, purpose).
class RngStream {
  public:
    RngStream() : eng_(0) {}
    RngStream(std::uint64_t master, std::int64_t node, RngPurpose purpose)
        : eng_(splitmix64(splitmix64(master) ^ splitmix64(static_cast<std::uint64_t>(node) * 0x9e3779b97f4a7c15ull) ^
                          splitmix64(static_cast<std::uint64_t>(purpose) << 17))) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    /// Inclusive integer range.
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double gaussian(double mean, double stddev) {
        if (stddev <= 0.0) return mean;
        return std::normal_distribution<double>(mean, stddev)(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace v2x

#endif
