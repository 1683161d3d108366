#include "mforge/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "mforge/errors.hpp"

namespace mforge {

double grad_check(const std::function<double(const std::vector<double>&)>& f,
                  const std::vector<double>& analytic_grad,
                  std::vector<double> point,
                  double step) {
  if (analytic_grad.size() != point.size()) {
    throw ShapeMismatch("grad_check: gradient and point sizes differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + step;
    const double up = f(point);
    point[i] = saved - step;
    const double down = f(point);
    point[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double analytic = analytic_grad[i];
    const double denom = std::max({1.0, std::abs(analytic), std::abs(numeric)});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  }
  return worst;
}

}  // namespace mforge
