#include "tneutral/search.hpp"

#include <cmath>

namespace tneutral {

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

std::vector<std::size_t> grid_local_maxima(const std::vector<double>& values,
                                           double plateau_tol) {
  std::vector<std::size_t> out;
  const std::size_t n = values.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    // extend over a plateau starting at i
    std::size_t j = i;
    while (j + 1 < n && std::abs(values[j + 1] - values[i]) < plateau_tol) ++j;
    if (j + 1 >= n) break;
    const bool rises_in = values[i] - values[i - 1] >= plateau_tol;
    const bool falls_out = values[j] - values[j + 1] >= plateau_tol;
    if (rises_in && falls_out) out.push_back((i + j) / 2);
    i = j + 1;
  }
  return out;
}

}  // namespace tneutral
