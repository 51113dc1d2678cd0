#pragma once

#include <functional>
#include <stdexcept>

namespace osp {

/// Raised when the adaptive integrator cannot reach the requested accuracy
/// or the integrand shows no radial decay.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive one-dimensional radial rule: Gauss-Kronrod 15-point panels with
/// bisection of the worst panel until the summed error estimate meets the
/// relative tolerance.
struct QuadratureScheme {
  double relative_tolerance = 1e-10;
  int max_subdivisions = 400;
  double cutoff_ratio = 1e-18;  // radial cutoff where the integrand falls below this fraction of its peak
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;      // absolute error estimate
  int subdivisions = 0;
  bool converged = false;
};

/// Integrates g over [a, b]. Throws QuadratureError when the subdivision
/// budget runs out before the tolerance is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                                    const QuadratureScheme& scheme = {});

/// 4D Euclidean integral of a radial function: 2 pi^2 * int_0^inf g(r) r^3 dr
/// (the 3-sphere surface area times the radial integral). The upper limit is
/// chosen by the cutoff policy; integrands without decay raise
/// QuadratureError.
QuadratureResult radial_integral_4d(const std::function<double(double)>& g,
                                    const QuadratureScheme& scheme = {});

}  // namespace osp
