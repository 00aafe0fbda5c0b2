#pragma once

#include <cstdint>
#include <random>

namespace asdlab {

// mt19937_64 with a fixed 53-bit mapping to [a, b), so a seed gives the same
// numbers with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace asdlab
