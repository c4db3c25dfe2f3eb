#pragma once

#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

#include "vvlab/problem.hpp"

namespace vvl::prop {

/// Seeded source of test inputs; every draw goes through one mt19937_64.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    // 53 random bits mapped to [0, 1), independent of the library's
    // distribution implementation.
    const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  std::vector<double> uniforms(std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (auto& v : out) v = uniform(lo, hi);
    return out;
  }

  /// Up to `max_pieces` disjoint constant pieces inside (lo, hi) with values
  /// in [-amp, amp].
  std::vector<Piece> pieces(double lo, double hi, int max_pieces, double amp) {
    const int n = integer(1, max_pieces);
    std::vector<double> cuts = uniforms(2 * n, lo, hi);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Piece> out;
    for (int j = 0; j < n; ++j) {
      if (cuts[2 * j + 1] > cuts[2 * j]) out.push_back({cuts[2 * j], cuts[2 * j + 1], uniform(-amp, amp)});
    }
    if (out.empty()) out.push_back({lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo), amp});
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vvl::prop
