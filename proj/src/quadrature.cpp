#include "osp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace osp {

namespace {

// Gauss-Kronrod 15/7 pair on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

Panel evaluate_panel(const std::function<double(double)>& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double offset = half * kKronrodNodes[i];
    const double fp = g(center + offset);
    const double fm = g(center - offset);
    const double pair = (i == 7) ? fp : fp + fm;
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  Panel panel;
  panel.a = a;
  panel.b = b;
  panel.value = kronrod * half;
  panel.error = std::abs((kronrod - gauss) * half);
  return panel;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                                    const QuadratureScheme& scheme) {
  std::vector<Panel> panels{evaluate_panel(g, a, b)};
  QuadratureResult result;
  for (int round = 0; round < scheme.max_subdivisions; ++round) {
    double total = 0.0;
    double error = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      error += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double target = scheme.relative_tolerance * std::max(std::abs(total), 1e-300);
    if (error <= target) {
      // sum in left-to-right panel order for a reproducible result
      std::sort(panels.begin(), panels.end(),
                [](const Panel& x, const Panel& y) { return x.a < y.a; });
      result.value = 0.0;
      result.error = 0.0;
      for (const Panel& p : panels) {
        result.value += p.value;
        result.error += p.error;
      }
      result.subdivisions = round;
      result.converged = true;
      return result;
    }
    const Panel split = panels[worst];
    const double mid = 0.5 * (split.a + split.b);
    panels[worst] = evaluate_panel(g, split.a, mid);
    panels.push_back(evaluate_panel(g, mid, split.b));
  }
  throw QuadratureError("adaptive quadrature: no convergence within " +
                        std::to_string(scheme.max_subdivisions) + " subdivisions");
}

QuadratureResult radial_integral_4d(const std::function<double(double)>& g,
                                    const QuadratureScheme& scheme) {
  const auto weighted = [&g](double r) { return g(r) * r * r * r; };

  // cutoff scan: extend the radius until the weighted integrand drops below
  // cutoff_ratio of the peak seen so far
  double radius = 1.0;
  double peak = 0.0;
  bool found = false;
  for (int octave = 0; octave < 60 && !found; ++octave) {
    const double lo = (octave == 0) ? 0.0 : radius / 2.0;
    for (int i = 1; i <= 16; ++i) {
      const double r = lo + (radius - lo) * static_cast<double>(i) / 16.0;
      peak = std::max(peak, std::abs(weighted(r)));
    }
    if (std::abs(weighted(radius)) <= scheme.cutoff_ratio * peak) {
      found = true;
    } else {
      radius *= 2.0;
    }
  }
  if (!found) {
    throw QuadratureError("radial_integral_4d: integrand shows no decay up to r = " +
                          std::to_string(radius));
  }

  QuadratureResult radial = integrate_adaptive(weighted, 0.0, radius, scheme);
  const double sphere = 2.0 * std::numbers::pi * std::numbers::pi;  // area of S^3
  radial.value *= sphere;
  radial.error *= sphere;
  return radial;
}

}  // namespace osp
