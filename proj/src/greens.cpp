#include "osp/greens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "osp/partitions.hpp"

namespace osp {

namespace {

constexpr double kH2MaxExponent = std::numbers::pi * std::numbers::pi / 54.0;

void require_odd_at_least(int n, int min, const char* what) {
  if (n < min || n % 2 == 0) {
    throw std::invalid_argument(std::string(what) + ": order must be odd and >= " +
                                std::to_string(min) + ", got " + std::to_string(n));
  }
}

void require_finite(std::span<const Momentum4> momenta, const char* what) {
  for (const auto& q : momenta) {
    for (double c : q.components) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument(std::string(what) + ": momentum components must be finite");
      }
    }
  }
}

}  // namespace

double propagator(double q_squared, double mass) {
  return 1.0 / (q_squared + mass * mass);
}

double h2_envelope(double q_squared, const PhysicalParams& params, EnvelopeMode mode) {
  const double base = q_squared + params.mass * params.mass;
  if (mode == EnvelopeMode::Min) return base;
  const RenormConstants derived;  // gamma_max depends on lambda only
  const double lambda = params.lambda;
  return derived.gamma_max(lambda) *
         (base + 6.0 * lambda * lambda * std::pow(base, kH2MaxExponent));
}

double delta_max_denominator(int n, const PhysicalParams& params,
                             const RenormConstants& constants) {
  const double pairings = (n == 3) ? 6.0 : static_cast<double>(n) * (n - 1);
  return 1.0 + constants.rho0 + params.lambda * constants.a0 + pairings * constants.d0;
}

std::pair<double, double> splitting_bounds(int n, const PhysicalParams& params,
                                           const RenormConstants& constants) {
  require_odd_at_least(n, 3, "splitting_bounds");
  const double lambda = params.lambda;
  if (n == 3) {
    const double min = 6.0 * lambda / constants.gamma_max(lambda);
    const double max = 6.0 * lambda / delta_max_denominator(3, params, constants);
    return {min, max};
  }
  const double k = 3.0 * lambda * n * (n - 1);
  const double min = k / (constants.gamma_max(lambda) + constants.rho_max(lambda) +
                          lambda * constants.a_max(lambda) + k);
  const double max = k / delta_max_denominator(n, params, constants);
  return {min, max};
}

double SplittingBounds::delta_min(int n) const {
  auto it = table.find(n);
  if (it == table.end()) throw std::out_of_range("splitting bounds: no entry for n = " + std::to_string(n));
  return it->second.first;
}

double SplittingBounds::delta_max(int n) const {
  auto it = table.find(n);
  if (it == table.end()) throw std::out_of_range("splitting bounds: no entry for n = " + std::to_string(n));
  return it->second.second;
}

bool SplittingBounds::ordered(int n) const { return delta_min(n) <= delta_max(n); }

SplittingBounds build_splitting_bounds(const PhysicalParams& params,
                                       const RenormConstants& constants, int n_max) {
  validate(params);
  validate(constants);
  SplittingBounds bounds;
  bounds.lambda = params.lambda;
  for (int n = 3; n <= n_max; n += 2) {
    bounds.table[n] = splitting_bounds(n, params, constants);
  }
  if (constants.d0 > 0.0) bounds.delta_infinity = 3.0 * params.lambda / constants.d0;
  return bounds;
}

int sign_of_h(int n) {
  require_odd_at_least(n, 1, "sign_of_h");
  return ((n - 1) / 2) % 2 == 0 ? +1 : -1;
}

EnvelopeEvaluator EnvelopeEvaluator::make(const PhysicalParams& params,
                                          const RenormConstants& constants, int n_max,
                                          EnvelopeMode mode) {
  return EnvelopeEvaluator{params, constants, build_splitting_bounds(params, constants, n_max),
                           mode};
}

double h_bound_closed(int n, const SplittingBounds& bounds) {
  require_odd_at_least(n, 3, "h_bound_closed");
  double product = 1.0;
  for (int m = 3; m <= n; m += 2) {
    product *= bounds.delta_min(m) * static_cast<double>(tree_counts(m).t_tilde);
  }
  return product;
}

double h_bound_closed_max(int n, const SplittingBounds& bounds) {
  require_odd_at_least(n, 3, "h_bound_closed_max");
  double product = 1.0;
  for (int m = 3; m <= n; m += 2) {
    product *= bounds.delta_max(m) * static_cast<double>(tree_counts(m).t);
  }
  return product;
}

double h_bound_recursive(int n, std::span<const Momentum4> momenta,
                         const EnvelopeEvaluator& evaluator, EnvelopeMode which) {
  require_odd_at_least(n, 3, "h_bound_recursive");
  if (static_cast<int>(momenta.size()) != n) {
    throw std::invalid_argument("h_bound_recursive: expected " + std::to_string(n) +
                                " momenta, got " + std::to_string(momenta.size()));
  }
  require_finite(momenta, "h_bound_recursive");
  const bool min = which == EnvelopeMode::Min;
  const auto leg = [&](const Momentum4& q) {
    const double q2 = q.squared();
    return evaluator.h2(q2, which) * evaluator.prop(q2);
  };
  if (n == 3) {
    const double delta = min ? evaluator.bounds.delta_min(3) : evaluator.bounds.delta_max(3);
    return delta * leg(momenta[0]) * leg(momenta[1]) * leg(momenta[2]);
  }
  const auto counts = tree_counts(n);
  const double delta = min ? evaluator.bounds.delta_min(n) : evaluator.bounds.delta_max(n);
  const double count = static_cast<double>(min ? counts.t_tilde : counts.t);
  Momentum4 head_sum;
  for (int i = 0; i < n - 2; ++i) {
    for (int c = 0; c < 4; ++c) head_sum.components[c] += momenta[i].components[c];
  }
  double value = delta * count * evaluator.prop(head_sum.squared());
  value *= h_bound_recursive(n - 2, momenta.first(n - 2), evaluator, which);
  value *= leg(momenta[n - 2]) * leg(momenta[n - 1]);
  return value;
}

double c_bound(int n, std::span<const Momentum4> momenta, const EnvelopeEvaluator& evaluator,
               EnvelopeMode which) {
  require_odd_at_least(n, 3, "c_bound");
  if (static_cast<int>(momenta.size()) != n) {
    throw std::invalid_argument("c_bound: expected " + std::to_string(n) + " momenta, got " +
                                std::to_string(momenta.size()));
  }
  require_finite(momenta, "c_bound");
  const auto leg = [&](const Momentum4& q) {
    const double q2 = q.squared();
    return evaluator.h2(q2, which) * evaluator.prop(q2);
  };
  if (n == 3) {
    // tree base: one three-block partition, three two-point legs
    return 6.0 * evaluator.params.lambda * leg(momenta[0]) * leg(momenta[1]) * leg(momenta[2]);
  }
  const auto counts = tree_counts(n);
  const double count = static_cast<double>(which == EnvelopeMode::Min ? counts.t_tilde : counts.t);
  double value = 3.0 * evaluator.params.lambda * n * (n - 1) * count;
  value *= h_bound_recursive(n - 2, momenta.first(n - 2), evaluator, which);
  value *= leg(momenta[n - 2]) * leg(momenta[n - 1]);
  return value;
}

}  // namespace osp
