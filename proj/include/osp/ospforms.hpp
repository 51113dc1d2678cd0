#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "osp/decompositions.hpp"
#include "osp/greens.hpp"
#include "osp/quadrature.hpp"

namespace osp {

/// Radial test function. The Gaussian kind is A * exp(-q^2 / sigma^2);
/// amplitude 0 gives the degenerate zero function.
struct TestFunction {
  enum class Kind { Gaussian };

  Kind kind = Kind::Gaussian;
  double amplitude = 1.0;
  double width = 1.0;  // sigma > 0

  static TestFunction gaussian(double amplitude = 1.0, double width = 1.0);

  double operator()(double r) const;  // value at |q| = r
};

/// The two reduced scalar integrals every positivity bound is expressed
/// through: norm_sq = int |f|^2 (H^2 prop^2), g1 = int |f| (H^2 prop^2),
/// both over the 4D Euclidean measure with the selected two-point envelope.
struct ScalarIntegrals {
  double norm_sq = 0.0;
  double g1 = 0.0;
  EnvelopeMode mode = EnvelopeMode::Min;
  double norm_sq_error = 0.0;
  double g1_error = 0.0;
};

ScalarIntegrals scalar_integrals(const TestFunction& f, const EnvelopeEvaluator& evaluator,
                                 EnvelopeMode mode, const QuadratureScheme& scheme = {});

/// One verified inequality at order n in {1, 3, 5}.
///
///   n = 1:  norm_sq >= 0
///   n = 3:  (1 - delta_3_max) S G^2          vs (1 - 6 Lambda) S G^2
///   n = 5:  (d5 d3 + 10 (1 - delta_3_max)) S G^4
///                                            vs (d5 d3 + 10 (1 - 6 Lambda)) S G^4
struct InequalityCheck {
  int n = 0;
  double lambda = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;       // lhs - rhs
  double scale = 0.0;        // S G^(n-1), reference magnitude for tolerances
  double weak_factor = 0.0;  // 1 - 6 Lambda
  bool pass = false;
  bool outside_weak_condition = false;
  double quadrature_error = 0.0;
};

/// Relative tolerance the small-n margins are gated at.
inline constexpr double kMarginTolerance = 1e-8;

InequalityCheck check_osp_small_n(int n, const std::vector<TestFunction>& family,
                                  const EnvelopeEvaluator& evaluator,
                                  const QuadratureScheme& scheme = {});

/// check_osp_small_n on precomputed scalar integrals. Lets a coupling scan
/// reuse the quadrature results: with the Min envelope the weights do not
/// depend on the coupling.
InequalityCheck check_osp_small_n_scalars(int n, double norm_sq, double g1,
                                          double quadrature_error, const PhysicalParams& params,
                                          const SplittingBounds& bounds);

/// Closed-form lower-bound coefficients for orders n >= 7, with the bracket
/// factors returned separately for diagnostics.
struct TheoremBounds {
  int n = 0;
  double h = 0.0;
  double h_bracket = 0.0;      // 1 - 2 delta_{n-2,max} / ((n-2)(n-3))
  double h_hat = 0.0;
  double h_hat_bracket = 0.0;  // 1 - 2 delta_{n,max} / (n(n-1))
};

TheoremBounds theorem31_bounds(int n, const PhysicalParams& params,
                               const RenormConstants& constants);

/// Hermitian-form matrix over slot counts 1..n. Entries exist for
/// M + N <= n + 1 with matching parity; parity-mismatched positions are
/// exact zeros; positions beyond the triangle are absent.
class OspMatrix {
 public:
  explicit OspMatrix(int n) : n_(n) {}

  int n() const { return n_; }
  bool in_triangle(int m, int nn) const { return m + nn <= n_ + 1; }
  std::optional<double> entry(int m, int nn) const;
  void set(int m, int nn, double value);

  /// Largest index with every pairwise entry inside the triangle.
  int restricted_size() const { return (n_ + 1) / 2; }

 private:
  int n_ = 0;
  std::map<std::pair<int, int>, double> entries_;
};

/// Assembles the envelope evaluation of the hermitian-form matrix for a
/// family of test functions (one per slot). Each entry is the classical
/// profile sum at order M + N - 1: sign * coefficient * envelope prefactor *
/// norm_sq(slot M) * g1^(M+N-2). The classical (multinomial) coefficients
/// are the default; assembly order is ascending (M, N).
OspMatrix assemble_osp_matrix(int n, const std::vector<TestFunction>& family,
                              const EnvelopeEvaluator& evaluator, EnvelopeMode mode,
                              const QuadratureScheme& scheme = {},
                              CoefficientConvention convention =
                                  CoefficientConvention::Multinomial);

/// assemble_osp_matrix on precomputed per-slot norms and the family sup g1.
OspMatrix assemble_osp_matrix_scalars(int n, std::span<const double> norm_sq, double g1,
                                      const SplittingBounds& bounds, EnvelopeMode mode,
                                      CoefficientConvention convention =
                                          CoefficientConvention::Multinomial);

/// PSD verdict tolerance: eigenvalues above -1e-10 * |matrix| count as
/// nonnegative.
inline constexpr double kPsdTolerance = 1e-10;

struct PsdReport {
  int n = 0;
  double min_eigenvalue = 0.0;  // of the fully-defined principal block
  double triangular_sum = 0.0;  // sum of every defined entry (the literal condition)
  double matrix_norm = 0.0;     // Frobenius norm over defined entries
  bool psd = false;
  bool triangular_nonneg = false;
};

/// Checks the matrix two ways: the sum of all defined entries, and the
/// minimum eigenvalue of the principal block on slots 1..(n+1)/2 where every
/// entry is defined (absent entries outside that block are treated as 0 in
/// the sum only).
PsdReport psd_check(const OspMatrix& matrix);

/// Eigenvalues of a small dense symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a);

}  // namespace osp
