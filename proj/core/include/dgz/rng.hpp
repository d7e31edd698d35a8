// Deterministic seeded randomness. mt19937_64 has a fully specified
// sequence, and the bounded draw below avoids std::uniform_int_distribution
// (whose output is implementation-defined), so seeded runs reproduce
// byte-identically across platforms and standard libraries.

#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace dgz {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Unbiased draw from [0, n): rejection sampling on the top partial block.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded draw from empty range");
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t rem = (kMax % n + 1) % n;  // 2^64 mod n
    std::uint64_t bound = kMax - rem;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > bound);
    return x % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dgz
