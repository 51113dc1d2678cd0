#include "osp/ospforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osp {

namespace {

void require_odd_at_least(int n, int min, const char* what) {
  if (n < min || n % 2 == 0) {
    throw std::invalid_argument(std::string(what) + ": order must be odd and >= " +
                                std::to_string(min) + ", got " + std::to_string(n));
  }
}

double int_pow(double base, int exponent) {
  double value = 1.0;
  for (int i = 0; i < exponent; ++i) value *= base;
  return value;
}

/// Envelope magnitude prefactor of one connected block of odd size j:
/// 1 for a two-point block, otherwise the product of splitting bounds and
/// tree counts up to j on the selected side.
double block_prefactor(int j, const SplittingBounds& bounds, EnvelopeMode mode) {
  if (j == 1) return 1.0;
  return mode == EnvelopeMode::Min ? h_bound_closed(j, bounds) : h_bound_closed_max(j, bounds);
}

int profile_sign(const OddProfile& profile) {
  int sign = 1;
  for (int part : profile.parts) sign *= sign_of_h(part);
  return sign;
}

}  // namespace

TestFunction TestFunction::gaussian(double amplitude, double width) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("test function amplitude must be finite and >= 0");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("test function width must be finite and > 0");
  }
  return TestFunction{Kind::Gaussian, amplitude, width};
}

double TestFunction::operator()(double r) const {
  return amplitude * std::exp(-(r * r) / (width * width));
}

ScalarIntegrals scalar_integrals(const TestFunction& f, const EnvelopeEvaluator& evaluator,
                                 EnvelopeMode mode, const QuadratureScheme& scheme) {
  const auto weight = [&](double r) {
    const double q2 = r * r;
    const double prop = evaluator.prop(q2);
    return evaluator.h2(q2, mode) * prop * prop;
  };
  ScalarIntegrals out;
  out.mode = mode;
  const auto norm = radial_integral_4d([&](double r) { const double v = f(r); return v * v * weight(r); },
                                       scheme);
  const auto g1 = radial_integral_4d([&](double r) { return std::abs(f(r)) * weight(r); }, scheme);
  out.norm_sq = norm.value;
  out.norm_sq_error = norm.error;
  out.g1 = g1.value;
  out.g1_error = g1.error;
  return out;
}

InequalityCheck check_osp_small_n_scalars(int n, double norm_sq, double g1,
                                          double quadrature_error, const PhysicalParams& params,
                                          const SplittingBounds& bounds) {
  if (n != 1 && n != 3 && n != 5) {
    throw std::invalid_argument("check_osp_small_n: n must be 1, 3 or 5");
  }
  InequalityCheck check;
  check.n = n;
  check.lambda = params.lambda;
  check.weak_factor = 1.0 - 6.0 * params.lambda;
  check.outside_weak_condition = !params.inside_weak_condition();
  check.quadrature_error = quadrature_error;

  if (n == 1) {
    check.lhs = norm_sq;
    check.rhs = 0.0;
    check.scale = std::max(norm_sq, 1.0);
  } else if (n == 3) {
    const double delta3_max = bounds.delta_max(3);
    check.scale = norm_sq * g1 * g1;
    check.lhs = (1.0 - delta3_max) * check.scale;
    check.rhs = check.weak_factor * check.scale;
  } else {
    const double delta3_min = bounds.delta_min(3);
    const double delta3_max = bounds.delta_max(3);
    const double delta5_min = bounds.delta_min(5);
    const double pairs = static_cast<double>(set_partition_count(OddProfile{{3, 1, 1}}));
    check.scale = norm_sq * int_pow(g1, 4);
    check.lhs = (delta5_min * delta3_min + pairs * (1.0 - delta3_max)) * check.scale;
    check.rhs = (delta5_min * delta3_min + pairs * check.weak_factor) * check.scale;
  }
  check.margin = check.lhs - check.rhs;
  check.pass = check.margin >= -kMarginTolerance * check.scale;
  return check;
}

InequalityCheck check_osp_small_n(int n, const std::vector<TestFunction>& family,
                                  const EnvelopeEvaluator& evaluator,
                                  const QuadratureScheme& scheme) {
  if (family.empty()) throw std::invalid_argument("check_osp_small_n: empty test-function family");

  // the distinguished slot carries the squared modulus; the sup runs over the family
  const ScalarIntegrals head = scalar_integrals(family.front(), evaluator, evaluator.mode, scheme);
  double g1 = 0.0;
  double g1_err = 0.0;
  for (const TestFunction& f : family) {
    const ScalarIntegrals s = scalar_integrals(f, evaluator, evaluator.mode, scheme);
    if (s.g1 > g1) {
      g1 = s.g1;
      g1_err = s.g1_error;
    }
  }
  return check_osp_small_n_scalars(n, head.norm_sq, g1, head.norm_sq_error + g1_err,
                                   evaluator.params, evaluator.bounds);
}

TheoremBounds theorem31_bounds(int n, const PhysicalParams& params,
                               const RenormConstants& constants) {
  require_odd_at_least(n, 7, "theorem31_bounds");
  const SplittingBounds bounds = build_splitting_bounds(params, constants, n);

  TheoremBounds out;
  out.n = n;
  // brackets written through the max-bound denominators: 1 - 6 Lambda / D
  out.h_bracket = 1.0 - 6.0 * params.lambda / delta_max_denominator(n - 2, params, constants);
  out.h_hat_bracket = 1.0 - 6.0 * params.lambda / delta_max_denominator(n, params, constants);

  const double full_product = h_bound_closed(n, bounds);
  const double truncated_product = h_bound_closed(n - 2, bounds);
  const double t_tilde_n = static_cast<double>(tree_counts(n).t_tilde);

  out.h = 0.5 * (n - 2) * (n - 3) * full_product * out.h_bracket;
  out.h_hat = 0.5 * n * (n - 1) * t_tilde_n * out.h_hat_bracket * truncated_product;
  return out;
}

std::optional<double> OspMatrix::entry(int m, int nn) const {
  auto it = entries_.find({m, nn});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void OspMatrix::set(int m, int nn, double value) {
  if (m < 1 || nn < 1 || m > n_ || nn > n_ || !in_triangle(m, nn)) {
    throw std::out_of_range("osp matrix: entry outside the defined support");
  }
  entries_[{m, nn}] = value;
}

OspMatrix assemble_osp_matrix_scalars(int n, std::span<const double> norm_sq, double g1,
                                      const SplittingBounds& bounds, EnvelopeMode mode,
                                      CoefficientConvention convention) {
  require_odd_at_least(n, 1, "assemble_osp_matrix");
  if (static_cast<int>(norm_sq.size()) != n) {
    throw std::invalid_argument("assemble_osp_matrix: need one norm per slot");
  }
  OspMatrix matrix(n);
  for (int m = 1; m <= n; ++m) {
    for (int nn = 1; nn <= n; ++nn) {
      if (!matrix.in_triangle(m, nn)) continue;
      if ((m + nn) % 2 != 0) {
        matrix.set(m, nn, 0.0);  // parity mismatch
        continue;
      }
      const int order = m + nn - 1;
      double entry = 0.0;
      for (const auto& profile : enumerate_odd_profiles(order)) {
        const double coeff = static_cast<double>(profile_coefficient(profile, convention));
        double term = profile_sign(profile) * coeff;
        for (int part : profile.parts) term *= block_prefactor(part, bounds, mode);
        entry += term;
      }
      entry *= norm_sq[m - 1] * int_pow(g1, order - 1);
      matrix.set(m, nn, entry);
    }
  }
  return matrix;
}

OspMatrix assemble_osp_matrix(int n, const std::vector<TestFunction>& family,
                              const EnvelopeEvaluator& evaluator, EnvelopeMode mode,
                              const QuadratureScheme& scheme,
                              CoefficientConvention convention) {
  require_odd_at_least(n, 1, "assemble_osp_matrix");
  if (static_cast<int>(family.size()) != n) {
    throw std::invalid_argument("assemble_osp_matrix: family must provide one test function per slot");
  }
  std::vector<double> norm_sq(n);
  double g1 = 0.0;
  for (int slot = 0; slot < n; ++slot) {
    const ScalarIntegrals s = scalar_integrals(family[slot], evaluator, mode, scheme);
    norm_sq[slot] = s.norm_sq;
    g1 = std::max(g1, s.g1);
  }
  return assemble_osp_matrix_scalars(n, norm_sq, g1, evaluator.bounds, mode, convention);
}

std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("eigenvalues: matrix must be square");
  }
  // cyclic Jacobi sweeps
  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off < 1e-30) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigenvalues(n);
  for (size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

PsdReport psd_check(const OspMatrix& matrix) {
  PsdReport report;
  report.n = matrix.n();

  double sum = 0.0;
  double norm_sq = 0.0;
  for (int m = 1; m <= matrix.n(); ++m) {
    for (int nn = 1; nn <= matrix.n(); ++nn) {
      const auto value = matrix.entry(m, nn);
      if (!value) continue;
      sum += *value;
      norm_sq += *value * *value;
    }
  }
  report.triangular_sum = sum;
  report.matrix_norm = std::sqrt(norm_sq);
  report.triangular_nonneg = sum >= -kPsdTolerance * std::max(report.matrix_norm, 1e-300);

  const int r = matrix.restricted_size();
  std::vector<std::vector<double>> block(r, std::vector<double>(r, 0.0));
  for (int m = 1; m <= r; ++m) {
    for (int nn = 1; nn <= r; ++nn) {
      block[m - 1][nn - 1] = matrix.entry(m, nn).value_or(0.0);
    }
  }
  const auto eigenvalues = symmetric_eigenvalues(std::move(block));
  report.min_eigenvalue = eigenvalues.empty() ? 0.0 : eigenvalues.front();
  report.psd = report.min_eigenvalue >= -kPsdTolerance * std::max(report.matrix_norm, 0.0);
  return report;
}

}  // namespace osp
