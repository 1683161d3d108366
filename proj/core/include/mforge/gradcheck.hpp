#pragma once

#include <functional>
#include <vector>

namespace mforge {

/// Compares an analytic gradient against central finite differences with
/// step h (default 1e-5). Returns the max over coordinates of
///   |analytic - numeric| / max(1, |analytic|, |numeric|).
/// The caller asserts a threshold; this never throws on large errors.
double grad_check(const std::function<double(const std::vector<double>&)>& f,
                  const std::vector<double>& analytic_grad,
                  std::vector<double> point,
                  double step = 1e-5);

}  // namespace mforge
