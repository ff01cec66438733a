#include "adkit/numdiff.hpp"

#include <cmath>

#include "adkit/functions.hpp"

namespace adkit::numdiff {

namespace {

// Product form of the fourth logistic iterate, as used for the error-vs-step
// study; kept separate from the AD paths so the curve is an independent
// measurement.
double quartic_composition(double x) {
  const double q = 1.0 - 2.0 * x;
  const double r = 1.0 - 8.0 * x + 8.0 * x * x;
  return 64.0 * x * (1.0 - x) * q * q * r * r;
}

}  // namespace

std::vector<double> h_grid(double hmin, double hmax, std::size_t points) {
  if (!(hmin > 0.0) || !(hmax > hmin))
    throw std::invalid_argument("h_grid: need 0 < hmin < hmax");
  if (points < 2) throw std::invalid_argument("h_grid: need at least 2 points");
  const double lo = std::log10(hmin);
  const double hi = std::log10(hmax);
  std::vector<double> grid(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(points - 1);
    grid[j] = std::pow(10.0, lo + t * (hi - lo));
  }
  return grid;
}

std::vector<double> default_h_grid() { return h_grid(1e-14, 1e-1, 100); }

std::vector<ErrorCurveRow> error_curve(double x0, std::span<const double> grid) {
  const double exact = bench::logistic_dl_closed(4, x0);
  const double fx = quartic_composition(x0);
  std::vector<ErrorCurveRow> rows;
  rows.reserve(grid.size());
  for (double h : grid) {
    check_step(h);
    const double fp = quartic_composition(x0 + h);
    const double fm = quartic_composition(x0 - h);
    const double est_f = (fp - fx) / h;
    const double est_c = (fp - fm) / (2.0 * h);
    rows.push_back({h, std::fabs(est_f - exact), std::fabs(est_c - exact)});
  }
  return rows;
}

}  // namespace adkit::numdiff
