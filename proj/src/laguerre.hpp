#pragma once

#include <cmath>
#include <span>

namespace catsim::detail {

// out[j] = sqrt(j!/(j+k)!) x^{k/2} e^{-x/2} L_j^{(k)}(x), j = 0..out.size()-1.
// These are the moduli of the displacement matrix elements <j+k|D|j> with
// x = |beta|^2. The normalized three-term recurrence keeps every term O(1)
// where the exact values are O(1), avoiding factorial overflow.
inline void laguerre_functions(double x, int k, std::span<double> out) {
  if (out.empty()) return;
  double f0;
  if (x == 0.0) {
    f0 = (k == 0) ? 1.0 : 0.0;
  } else {
    f0 = std::exp(0.5 * k * std::log(x) - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
  }
  out[0] = f0;
  if (out.size() == 1) return;
  out[1] = (1.0 + k - x) * f0 / std::sqrt(1.0 + k);
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    const double jd = static_cast<double>(j);
    const double num = (2.0 * jd + 1.0 + k - x) * out[j] - std::sqrt(jd * (jd + k)) * out[j - 1];
    out[j + 1] = num / std::sqrt((jd + 1.0) * (jd + 1.0 + k));
  }
}

}  // namespace catsim::detail
