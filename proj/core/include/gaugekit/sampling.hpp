#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace gaugekit {

//! Seeded generator for every randomized sweep.
//
//  The engine is std::mt19937_64 (the 64-bit Mersenne Twister, MT19937-64,
//  default seeding). A uniform double in [0, 1) is formed from the top 53 bits
//  of one 64-bit draw: (draw >> 11) * 2^-53. Nothing else consumes draws, so
//  point sets are reproducible in any language with MT19937-64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

using Point4 = std::array<double, 4>;

//! Ball in x^1..x^3 (optionally restricted to an x^0 interval) where the
//  field is declared singular.
struct SingularRegion {
  std::array<double, 3> center{};
  double radius = 0.0;
  std::optional<std::pair<double, double>> time;

  bool contains(const Point4& x) const;
};

bool in_any(std::span<const SingularRegion> regions, const Point4& x);

//! Axis-aligned sampling box, one [lo, hi] pair per coordinate.
struct Box {
  std::array<std::pair<double, double>, 4> bounds{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};

  Point4 sample(Rng& rng) const;
};

// Rejection-samples `count` points outside every region. Throws
// std::runtime_error when the regions cover nearly all of the box.
std::vector<Point4> sample_points(const Box& box, std::span<const SingularRegion> exclusions,
                                  std::size_t count, Rng& rng);

}  // namespace gaugekit
