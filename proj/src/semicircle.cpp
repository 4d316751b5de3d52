#include "guefield/semicircle.hpp"

namespace guefield {

double semicircle_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("semicircle_quantile: p outside [0, 1]");
  if (p == 0.0) return -1.0;
  if (p == 1.0) return 1.0;
  double lo = -1.0, hi = 1.0;
  double x = 0.0;
  for (int it = 0; it < 200; ++it) {
    double g = semicircle_cdf(x) - p;
    if (std::abs(g) <= 1e-12) return x;
    if (g > 0.0) hi = x; else lo = x;
    double step = g / std::max(semicircle_density(x), 1e-8);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

SemicirclePartition build_partition(int n) {
  if (n < 1) throw std::invalid_argument("build_partition: n must be positive");
  SemicirclePartition part;
  part.n = n;
  part.gamma.resize(n + 1);
  part.cell_mean.resize(n);
  part.cell_density.resize(n + 1);

  part.gamma[0] = -1.0;
  part.gamma[n] = 1.0;
  // Solve the left half and mirror; an even n gets gamma[n/2] = 0 exactly.
  for (int j = 1; j <= n / 2; ++j) {
    part.gamma[j] = semicircle_quantile(static_cast<double>(j) / n);
    part.gamma[n - j] = -part.gamma[j];
  }
  if (n % 2 == 0) part.gamma[n / 2] = 0.0;

  for (int j = 0; j <= n; ++j) part.cell_density[j] = semicircle_density(part.gamma[j]);
  for (int j = 0; j < n; ++j) {
    part.cell_mean[j] = n * semicircle_first_moment(part.gamma[j], part.gamma[j + 1]);
  }
  return part;
}

}  // namespace guefield
