/* SPDX-License-Identifier: Apache-2.0 */
#include <algorithm>
#include <cmath>

#include "plab/minima.hpp"

namespace plab {

namespace {
bool same_slope(double a, double b) { return std::fabs(a - b) <= 1e-7 * (1.0 + std::fabs(a)); }
}  // namespace

SlopeReport profile_slopes(const MinimaProfile& profile, double tol) {
  SlopeReport rep;
  const int k = profile.k;
  const double hi = 1.0 / k;
  const auto& rows = profile.rows;
  if (rows.size() < 2) return rep;
  for (int j = 1; j <= k + 1; ++j) {
    std::vector<double> s;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      s.push_back((rows[i + 1].L[j - 1] - rows[i].L[j - 1]) / (rows[i + 1].q - rows[i].q));
    }
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t e = i + 1;
      while (e < s.size() && same_slope(s[i], s[e])) ++e;
      Segment seg;
      seg.j = j;
      seg.from = i;
      seg.to = e;
      seg.slope = s[i];
      seg.fitted = e - i >= 2;
      if (seg.fitted) {
        double dev = std::min(std::fabs(seg.slope + 1.0), std::fabs(seg.slope - hi));
        rep.max_deviation = std::max(rep.max_deviation, dev);
        seg.ok = dev <= tol;
        ++rep.fitted;
      } else {
        // A chord across a kink stays between the two admissible slopes.
        seg.ok = seg.slope >= -1.0 - tol && seg.slope <= hi + tol;
      }
      if (!seg.ok) ++rep.violations;
      rep.segments.push_back(seg);
      i = e;
    }
  }
  return rep;
}

}  // namespace plab
