#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "absreuse/analytics.hpp"

namespace absreuse {
namespace {

Zones no_zones(std::string reason) {
  Zones z;
  z.reason = std::move(reason);
  return z;
}

// Nulls take the linear interpolation of their non-null neighbours; leading
// and trailing nulls copy the nearest value.
std::optional<std::vector<double>> fill_gaps(std::span<const std::optional<double>> curve) {
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i]) known.push_back(i);
  }
  if (known.empty()) return std::nullopt;
  std::vector<double> out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i]) {
      out[i] = *curve[i];
      continue;
    }
    auto hi = std::lower_bound(known.begin(), known.end(), i);
    if (hi == known.begin()) {
      out[i] = *curve[*hi];
    } else if (hi == known.end()) {
      out[i] = *curve[known.back()];
    } else {
      const std::size_t a = *(hi - 1);
      const std::size_t b = *hi;
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      out[i] = *curve[a] + t * (*curve[b] - *curve[a]);
    }
  }
  return out;
}

std::vector<double> moving_average(const std::vector<double>& v, std::size_t window) {
  const std::size_t half = window / 2;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(v.size() - 1, i + half);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += v[k];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace

Zones detect_zones(std::span<const std::optional<double>> curve, std::size_t window) {
  if (window == 0) window = 1;
  const std::size_t n = curve.size();
  if (n < 50) return no_zones("curve has fewer than 50 bins");
  if (n < 3 * window) return no_zones("smoothing window too wide for the curve");
  const auto filled = fill_gaps(curve);
  if (!filled) return no_zones("curve has no data");
  const std::vector<double>& raw = *filled;
  const std::vector<double> s = moving_average(raw, window);

  // First local minimum: end of the first descent.
  std::size_t i = 1;
  while (i < n && s[i] >= s[i - 1]) ++i;
  if (i >= n) return no_zones("curve never decreases");
  while (i + 1 < n && s[i + 1] <= s[i]) ++i;
  if (i + 1 >= n) return no_zones("no rise after the first minimum");
  std::size_t b1 = i;

  // First subsequent local maximum: end of the following ascent.
  while (i + 1 < n && s[i + 1] >= s[i]) ++i;
  std::size_t b2 = i;
  if (b2 + 1 >= n) return no_zones("no maximum before the end of the curve");

  // Terminal strictly increasing run.
  std::size_t j = n - 1;
  while (j > 0 && s[j - 1] < s[j]) --j;
  if (j == n - 1) return no_zones("no terminal increase");
  if (j <= b2) return no_zones("terminal increase overlaps the middle zone");
  std::size_t trough = j;

  // Refine on the unsmoothed curve near each smoothed boundary.
  const std::size_t half = window / 2;
  auto span_of = [&](std::size_t c) {
    return std::pair{c >= half ? c - half : 0, std::min(n - 1, c + half)};
  };
  {
    auto [lo, hi] = span_of(b1);
    for (std::size_t k = lo; k <= hi; ++k) {
      if (raw[k] < raw[b1] || (raw[k] == raw[b1] && k < b1)) b1 = k;
    }
  }
  {
    auto [lo, hi] = span_of(b2);
    for (std::size_t k = lo; k <= hi; ++k) {
      if (raw[k] > raw[b2] || (raw[k] == raw[b2] && k < b2)) b2 = k;
    }
  }
  {
    // Last index holding the minimum, so a flat floor ends where the rise begins.
    auto [lo, hi] = span_of(trough);
    std::size_t best = lo;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (raw[k] <= raw[best]) best = k;
    }
    trough = best;
  }
  const std::size_t b3 = std::min(trough + 1, n - 1);
  if (!(b1 < b2 && b2 < b3)) return no_zones("boundaries are not ordered");

  Zones z;
  z.defined = true;
  z.bins = {b1, b2, b3};
  for (std::size_t k = 0; k < 3; ++k) z.boundaries[k] = static_cast<double>(z.bins[k]) / static_cast<double>(n);
  return z;
}

}  // namespace absreuse
