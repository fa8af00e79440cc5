#include "nonlocal/bifurcation.hpp"

#include <algorithm>
#include <cmath>

namespace nonlocal {

namespace {

double bisect(const std::function<double(double)>& phi, double lo, double hi, double tol) {
  double flo = phi(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phi(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RootReport count_roots(double beta, double h, const Nonlinearity& g, const RootScan& scan) {
  const auto phi = [&](double s) { return s - g.g(beta * s + beta * h); };
  const std::ptrdiff_t n = scan.nodes;
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> fs(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double s = scan.lower + (scan.upper - scan.lower) * static_cast<double>(i) / static_cast<double>(n - 1);
    xs[static_cast<std::size_t>(i)] = s;
    fs[static_cast<std::size_t>(i)] = phi(s);
  }

  RootReport report;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (fs[i] == 0.0) {
      report.roots.push_back(xs[i]);
      continue;
    }
    if (i + 1 < xs.size() && fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      report.roots.push_back(bisect(phi, xs[i], xs[i + 1], scan.tolerance));
    }
    // Tangency: interior local minimum of |phi| with no sign change on either side.
    if (i > 0 && i + 1 < xs.size()) {
      const double a = std::abs(fs[i - 1]), b = std::abs(fs[i]), c = std::abs(fs[i + 1]);
      const bool same_sign = (fs[i - 1] < 0.0) == (fs[i] < 0.0) && (fs[i] < 0.0) == (fs[i + 1] < 0.0);
      if (same_sign && b <= a && b <= c && b < scan.tangency) report.tangential.push_back(xs[i]);
    }
  }
  std::sort(report.roots.begin(), report.roots.end());
  for (double r : report.roots) report.residuals.push_back(std::abs(phi(r)));
  report.count = static_cast<int>(report.roots.size());
  return report;
}

HStar compute_h_star(double beta, const Nonlinearity& g, double tolerance) {
  if (!(beta > 1.0)) return HStar{0.0, true};
  const auto three = [&](double h) { return count_roots(beta, h, g).count == 3; };
  double lo = 0.0;
  double hi = 2.0;
  if (!three(lo) || three(hi) || count_roots(beta, hi, g).count != 1) {
    throw Error(ErrorCode::not_bistable, "no transition from three roots to one root for h in [0, 2]");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (three(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return HStar{0.5 * (lo + hi), false};
}

double h_star_tanh_closed_form(double beta) {
  if (!(beta > 1.0)) return 0.0;
  const double s = std::sqrt(1.0 - 1.0 / beta);
  return s - std::atanh(s) / beta;
}

}  // namespace nonlocal
