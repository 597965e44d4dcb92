#include "gaugekit/sampling.hpp"

#include <stdexcept>

namespace gaugekit {

bool SingularRegion::contains(const Point4& x) const {
  if (time && (x[0] < time->first || x[0] > time->second)) return false;
  double r2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = x[i + 1] - center[i];
    r2 += d * d;
  }
  return r2 < radius * radius;
}

bool in_any(std::span<const SingularRegion> regions, const Point4& x) {
  for (const auto& r : regions) {
    if (r.contains(x)) return true;
  }
  return false;
}

Point4 Box::sample(Rng& rng) const {
  Point4 x;
  for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(bounds[mu].first, bounds[mu].second);
  return x;
}

std::vector<Point4> sample_points(const Box& box, std::span<const SingularRegion> exclusions,
                                  std::size_t count, Rng& rng) {
  std::vector<Point4> out;
  out.reserve(count);
  const std::size_t max_attempts = 100 * count + 1000;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("sampling box is almost entirely inside singular regions");
    }
    Point4 x = box.sample(rng);
    if (!in_any(exclusions, x)) out.push_back(x);
  }
  return out;
}

}  // namespace gaugekit
