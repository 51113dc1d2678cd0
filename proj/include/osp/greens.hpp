#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "osp/model_config.hpp"

namespace osp {

/// Euclidean four-momentum.
struct Momentum4 {
  std::array<double, 4> components{0.0, 0.0, 0.0, 0.0};

  double squared() const {
    double s = 0.0;
    for (double c : components) s += c * c;
    return s;
  }
};

enum class EnvelopeMode { Min, Max };

/// Free Euclidean propagator 1/(q^2 + m^2). Strictly positive and <= 1/m^2.
double propagator(double q_squared, double mass);
inline double propagator(const Momentum4& q, double mass) { return propagator(q.squared(), mass); }

/// Two-point envelopes. Min: q^2 + m^2. Max: gamma_max * [(q^2 + m^2) +
/// 6 Lambda^2 (q^2 + m^2)^(pi^2/54)].
double h2_envelope(double q_squared, const PhysicalParams& params, EnvelopeMode mode);
inline double h2_envelope(const Momentum4& q, const PhysicalParams& params, EnvelopeMode mode) {
  return h2_envelope(q.squared(), params, mode);
}

/// Splitting-function bounds at odd order n >= 3.
///
///   n = 3:   min = 6L / gamma_max(L)            max = 6L / (1 + rho0 + L a0 + 6 d0)
///   n >= 5:  min = 3Ln(n-1) / (gamma_max + rho_max + L a_max + 3Ln(n-1))
///            max = 3Ln(n-1) / (1 + rho0 + L a0 + n(n-1) d0)
std::pair<double, double> splitting_bounds(int n, const PhysicalParams& params,
                                           const RenormConstants& constants);

/// Denominator of the max splitting bound at order n. The bracket factors
/// 1 - 2 delta_max / (n(n-1)) are computed as 1 - 6 Lambda / this value,
/// which is the same quantity without the intermediate rounding.
double delta_max_denominator(int n, const PhysicalParams& params, const RenormConstants& constants);

/// Table of splitting bounds for odd n in [3, n_max], plus the large-n limit
/// of the max bound when d0 > 0.
struct SplittingBounds {
  double lambda = 0.0;
  std::map<int, std::pair<double, double>> table;  // n -> (delta_min, delta_max)

  double delta_min(int n) const;
  double delta_max(int n) const;
  bool ordered(int n) const;  // delta_min <= delta_max at this order

  std::optional<double> delta_infinity;  // 3 Lambda / d0, present when d0 > 0
};

SplittingBounds build_splitting_bounds(const PhysicalParams& params,
                                       const RenormConstants& constants, int n_max);

/// Sign carried by the connected (n+1)-point function: (-1)^((n-1)/2).
int sign_of_h(int n);

/// Pointwise evaluator bundling the configuration the envelope formulas need.
struct EnvelopeEvaluator {
  PhysicalParams params;
  RenormConstants constants;
  SplittingBounds bounds;
  EnvelopeMode mode = EnvelopeMode::Min;

  static EnvelopeEvaluator make(const PhysicalParams& params, const RenormConstants& constants,
                                int n_max, EnvelopeMode mode = EnvelopeMode::Min);

  double h2(double q_squared, EnvelopeMode m) const { return h2_envelope(q_squared, params, m); }
  double h2(double q_squared) const { return h2(q_squared, mode); }
  double prop(double q_squared) const { return propagator(q_squared, params.mass); }
};

/// Momentum-independent prefactor of the minimal connected envelope relative
/// to the product of two-point legs: prod over odd m in [3, n] of
/// delta_{m,min} * t_tilde_m.
double h_bound_closed(int n, const SplittingBounds& bounds);

/// Max-envelope analog of h_bound_closed: prod of delta_{m,max} * t_m.
double h_bound_closed_max(int n, const SplittingBounds& bounds);

/// Recursive connected-envelope magnitude |H^{n+1}| at the given momenta.
/// Base order 3: delta_3 * prod of three two-point legs. Recursion step:
/// delta_n * treecount * prop(sum of first n-2 momenta) * recurse(first n-2)
/// * two trailing legs. Min uses (delta_min, t_tilde), Max (delta_max, t).
double h_bound_recursive(int n, std::span<const Momentum4> momenta,
                         const EnvelopeEvaluator& evaluator, EnvelopeMode which);

/// Tree-term envelope magnitude |C^{n+1}|. Base order 3: 6 Lambda * three
/// two-point legs. For n >= 5: 3 Lambda n(n-1) * (t_tilde or t) *
/// |H^{n-1}|(first n-2 momenta) * two trailing legs.
double c_bound(int n, std::span<const Momentum4> momenta, const EnvelopeEvaluator& evaluator,
               EnvelopeMode which);

}  // namespace osp
