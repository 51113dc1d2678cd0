#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "osp/decompositions.hpp"
#include "osp/model_config.hpp"
#include "osp/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPositivityFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
};

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << content;
}

// The config file, when given, overrides values supplied as flags.
void apply_config(const std::string& path, osp::ScanSpec& spec, osp::RenormConstants& constants,
                  osp::ConfigProvenance& provenance, double* lambda_override) {
  if (path.empty()) {
    provenance.defaulted_keys = {"a0", "rho0", "d0", "n3_val", "n3_deriv"};
    provenance.note = "defaults applied";
    return;
  }
  const osp::ModelConfig config = osp::load_config_file(path);
  constants = config.constants;
  provenance = config.provenance;
  spec.mass = config.params.mass;
  if (lambda_override) {
    *lambda_override = config.params.lambda;
  } else {
    spec.lambda_min = config.params.lambda;
    spec.lambda_max = config.params.lambda;
    spec.steps = 1;
  }
}

std::string audit_to_csv(const osp::AuditReport& report) {
  std::string out = "profile,k,classical_coeff,rhs_coeff_setpart,rhs_coeff_multinomial\n";
  for (const auto& row : report.rows) {
    out += "\"" + row.profile.str() + "\"," + std::to_string(row.k) + "," +
           row.classical_setpart.str() + "," + row.rhs_setpart.str() + "," +
           row.rhs_multinomial.str() + "\n";
  }
  return out;
}

std::string audit_to_json(const osp::AuditReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back(nlohmann::json{{"profile", row.profile.str()},
                                  {"k", row.k},
                                  {"stratum", row.stratum},
                                  {"classical_setpart", row.classical_setpart.str()},
                                  {"classical_multinomial", row.classical_multinomial.str()},
                                  {"lhs_tau_minus_t1", row.lhs_tau_minus_t1.str()},
                                  {"rhs_setpart", row.rhs_setpart.str()},
                                  {"rhs_multinomial", row.rhs_multinomial.str()},
                                  {"reconstruction_mismatch", row.reconstruction_mismatch},
                                  {"lhs_t3", row.lhs_t3.str()},
                                  {"rhs_t3_setpart", row.rhs_t3_setpart.str()},
                                  {"rhs_t3_multinomial", row.rhs_t3_multinomial.str()}});
  }
  nlohmann::json root{{"schema_version", osp::kReportSchemaVersion},
                      {"tool", nlohmann::json{{"name", osp::kToolName},
                                              {"version", osp::kToolVersion}}},
                      {"n", report.n},
                      {"rows", rows},
                      {"mismatch_count", report.mismatch_count}};
  return root.dump(2) + "\n";
}

int cmd_scan(const osp::ScanSpec& spec, const osp::RenormConstants& constants,
             const osp::ConfigProvenance& provenance) {
  const osp::OspReport report = osp::run_scan(spec, constants, provenance);
  const std::string serialized =
      spec.format == "csv" ? osp::report_to_csv(report) : osp::report_to_json(report);
  if (!spec.out_path.empty()) {
    write_output(serialized, spec.out_path);
  }

  int gated = 0;
  int passed = 0;
  int outside = 0;
  for (const auto& r : report.records) {
    if (r.gated) {
      ++gated;
      if (r.pass) ++passed;
    } else {
      ++outside;
    }
  }
  std::cout << "scan: " << report.records.size() << " coupling values, " << gated
            << " gated, " << passed << " passed";
  if (outside > 0) std::cout << ", " << outside << " outside weak-condition range (warnings only)";
  std::cout << "\n";
  if (spec.out_path.empty() && report.records.size() <= 32) {
    for (const auto& r : report.records) {
      std::printf("  lambda=%-10.6g weak_factor=%-12.6g %s%s\n", r.lambda, r.weak_factor,
                  r.gated ? (r.pass ? "pass" : "FAIL") : "outside-weak-condition",
                  r.inside_construction_range ? " (construction range)" : "");
    }
  }
  if (!report.failures.empty()) {
    std::cout << "failures:\n";
    for (const auto& f : report.failures) {
      std::printf("  lambda=%.6g %s: %s\n", f.lambda, f.check.c_str(), f.detail.c_str());
    }
    return kExitPositivityFailure;
  }
  return kExitPass;
}

int cmd_check(int n, double lambda, const osp::ScanSpec& spec,
              const osp::RenormConstants& constants, const osp::ConfigProvenance& provenance,
              const std::string& out_path) {
  const osp::OspReport report = osp::run_check_report(n, lambda, spec, constants, provenance);
  const osp::LambdaRecord& record = report.records.front();
  std::printf("check n=%d lambda=%.6g mass=%.6g (%s)\n", n, lambda, spec.mass,
              record.inside_weak_condition ? "inside weak condition" : "outside weak condition");
  for (const auto& c : record.small_n) {
    std::printf("  n=%d  lhs=%.12g rhs=%.12g margin=%.12g %s%s\n", c.n, c.lhs, c.rhs, c.margin,
                c.pass ? "pass" : "FAIL", c.outside_weak_condition ? " [outside weak range]" : "");
  }
  for (const auto& t : record.theorem) {
    std::printf("  n=%d  h=%.12g (bracket %.12g)  h_hat=%.12g (bracket %.12g) %s\n", t.bounds.n,
                t.bounds.h, t.bounds.h_bracket, t.bounds.h_hat, t.bounds.h_hat_bracket,
                t.pass ? "pass" : "FAIL");
  }
  for (const auto& p : record.psd) {
    std::printf("  P_%d  triangular_sum=%.12g min_eigenvalue=%.12g %s\n", p.report.n,
                p.report.triangular_sum, p.report.min_eigenvalue, p.pass ? "psd" : "NOT PSD");
  }
  if (!out_path.empty()) {
    write_output(osp::report_to_json(report), out_path);
  }
  const bool gate = record.inside_weak_condition && !record.pass;
  return gate ? kExitPositivityFailure : kExitPass;
}

int cmd_partitions(int n, std::optional<int> k, const std::string& out_path) {
  std::string out = "n,profile,parts,set_partition_count,multinomial\n";
  for (const auto& profile : osp::enumerate_odd_profiles(n, k)) {
    out += std::to_string(n) + ",\"" + profile.str() + "\"," + std::to_string(profile.k()) + "," +
           std::to_string(osp::set_partition_count(profile)) + "," +
           std::to_string(osp::multinomial_count(profile)) + "\n";
  }
  write_output(out, out_path);
  return kExitPass;
}

int cmd_audit(int n, const std::string& format, const std::string& out_path) {
  const osp::AuditReport report = osp::identity_audit(n);
  write_output(format == "csv" ? audit_to_csv(report) : audit_to_json(report), out_path);
  // audits inform, never gate
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bound-envelope verification of momentum-space positivity conditions"};
  app.require_subcommand(1);

  osp::ScanSpec spec;
  CommonOptions common;

  auto* scan = app.add_subcommand("scan", "verify positivity over a coupling grid");
  scan->add_option("--lambda-min", spec.lambda_min, "grid start (> 0)");
  scan->add_option("--lambda-max", spec.lambda_max, "grid end");
  scan->add_option("--steps", spec.steps, "number of grid points");
  scan->add_option("--n-max", spec.n_max, "odd ceiling for bound evaluation");
  scan->add_option("--mass", spec.mass, "particle mass (> 0)");
  scan->add_option("--sigma", spec.sigma, "Gaussian test-function width");
  scan->add_option("--tol", spec.quad_tolerance, "quadrature relative tolerance");
  scan->add_option("--out", spec.out_path, "report output path");
  scan->add_option("--format", spec.format, "report format: json or csv");
  scan->add_option("--config", common.config_path, "key/value config file (overrides flags)");

  int check_n = 3;
  double check_lambda = 0.04;
  auto* check = app.add_subcommand("check", "verify one order at one coupling");
  check->add_option("--n", check_n, "odd order to check")->required();
  check->add_option("--lambda", check_lambda, "coupling value");
  check->add_option("--mass", spec.mass, "particle mass (> 0)");
  check->add_option("--sigma", spec.sigma, "Gaussian test-function width");
  check->add_option("--tol", spec.quad_tolerance, "quadrature relative tolerance");
  check->add_option("--out", common.out_path, "single-record report path");
  check->add_option("--config", common.config_path, "key/value config file (overrides flags)");

  int partitions_n = 5;
  int partitions_k = 0;
  auto* partitions = app.add_subcommand("partitions", "list odd profiles and their counts");
  partitions->add_option("--n", partitions_n, "odd integer to partition")->required();
  partitions->add_option("--k", partitions_k, "restrict to exactly k parts");
  partitions->add_option("--out", common.out_path, "CSV output path (default stdout)");

  int audit_n = 5;
  auto* audit = app.add_subcommand("audit", "tree-reconstruction coefficient audit");
  audit->add_option("--n", audit_n, "odd order to audit")->required();
  audit->add_option("--out", common.out_path, "output path (default stdout)");
  audit->add_option("--format", common.format, "json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    osp::RenormConstants constants;
    osp::ConfigProvenance provenance;
    if (scan->parsed()) {
      apply_config(common.config_path, spec, constants, provenance, nullptr);
      return cmd_scan(spec, constants, provenance);
    }
    if (check->parsed()) {
      apply_config(common.config_path, spec, constants, provenance, &check_lambda);
      return cmd_check(check_n, check_lambda, spec, constants, provenance, common.out_path);
    }
    if (partitions->parsed()) {
      return cmd_partitions(partitions_n,
                            partitions_k > 0 ? std::optional<int>(partitions_k) : std::nullopt,
                            common.out_path);
    }
    if (audit->parsed()) {
      return cmd_audit(audit_n, common.format, common.out_path);
    }
  } catch (const osp::QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
