#pragma once

#include <string>
#include <vector>

namespace osp {

/// Weak-condition threshold on the coupling constant.
inline constexpr double kWeakConditionLimit = 1.0 / 6.0;

/// Upper end of the coupling range the bound formulas were constructed on.
/// Values above it are still evaluable; reports carry the range flag.
inline constexpr double kConstructionRangeLimit = 0.04;

struct PhysicalParams {
  double lambda = 0.0;  // dimensionless coupling, > 0
  double mass = 0.0;    // > 0, energy units

  bool inside_weak_condition() const { return lambda < kWeakConditionLimit; }
  bool inside_construction_range() const { return lambda <= kConstructionRangeLimit; }
};

/// Mass-shell loop constants entering the splitting-bound denominators.
/// They are not computable here and default to zero, the most permissive
/// denominator choice; the provenance records when defaults were applied.
struct RenormConstants {
  double a0 = 0.0;        // |a_0|
  double rho0 = 0.0;      // rho_0
  double d0 = 0.0;
  double n3_val = 0.0;    // mass-shell value of the two-loop kernel
  double n3_deriv = 0.0;  // its q^2-derivative at the mass shell

  // Derived quantities are recomputed from lambda on every call, never stored.
  double gamma_max(double lambda) const;
  double gamma_min() const { return 1.0; }
  double rho_max(double lambda) const { return 6.0 * lambda * lambda * n3_deriv; }
  double a_max(double lambda) const { return 6.0 * lambda * n3_val; }
};

struct ConfigProvenance {
  std::vector<std::string> defaulted_keys;  // renorm constants that fell back to 0
  std::string note;                         // "defaults applied" when any did
};

struct ModelConfig {
  PhysicalParams params;
  RenormConstants constants;
  ConfigProvenance provenance;
};

/// Parses a key/value configuration document. Two forms are accepted: plain
/// lines ("key = value" or "key: value", '#' comments) and a JSON object.
/// Keys are lower_snake_case; unknown keys are rejected. lambda and mass are
/// required; renorm constants are optional and default to 0.
///
/// Throws std::invalid_argument on parse failure, lambda <= 0, mass <= 0, or
/// a negative renorm constant.
ModelConfig load_config(const std::string& document);

/// load_config on the contents of a file.
ModelConfig load_config_file(const std::string& path);

void validate(const PhysicalParams& params);
void validate(const RenormConstants& constants);

}  // namespace osp
