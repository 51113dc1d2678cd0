#include "osp/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace osp {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

struct CachedScalars {
  std::vector<double> norm_sq;  // per slot; identical Gaussians share one value
  double g1 = 0.0;
  double norm_sq_error = 0.0;
  double g1_error = 0.0;
};

CachedScalars compute_scalars(const ScanSpec& spec, int slots) {
  // Min-envelope weights do not depend on the coupling, so one evaluation
  // serves the whole grid. The evaluator only needs mass here.
  PhysicalParams params{kConstructionRangeLimit, spec.mass};
  const EnvelopeEvaluator evaluator =
      EnvelopeEvaluator::make(params, RenormConstants{}, 3, EnvelopeMode::Min);
  QuadratureScheme scheme;
  scheme.relative_tolerance = spec.quad_tolerance;
  const ScalarIntegrals s = scalar_integrals(TestFunction::gaussian(1.0, spec.sigma), evaluator,
                                             EnvelopeMode::Min, scheme);
  CachedScalars cache;
  cache.norm_sq.assign(slots, s.norm_sq);
  cache.g1 = s.g1;
  cache.norm_sq_error = s.norm_sq_error;
  cache.g1_error = s.g1_error;
  return cache;
}

LambdaRecord evaluate_lambda(double lambda, const ScanSpec& spec,
                             const RenormConstants& constants, const CachedScalars& scalars) {
  PhysicalParams params{lambda, spec.mass};
  const SplittingBounds bounds = build_splitting_bounds(params, constants, std::max(spec.n_max, 5));

  LambdaRecord record;
  record.lambda = lambda;
  record.inside_weak_condition = params.inside_weak_condition();
  record.inside_construction_range = params.inside_construction_range();
  record.weak_factor = 1.0 - 6.0 * lambda;

  for (int n = 3; n <= spec.n_max; n += 2) {
    record.splitting.push_back(
        SplittingRecord{n, bounds.delta_min(n), bounds.delta_max(n), bounds.ordered(n)});
  }
  record.delta_infinity = bounds.delta_infinity;

  const double quad_error = scalars.norm_sq_error + scalars.g1_error;
  for (int n = 1; n <= std::min(spec.n_max, 5); n += 2) {
    record.small_n.push_back(check_osp_small_n_scalars(n, scalars.norm_sq.front(), scalars.g1,
                                                       quad_error, params, bounds));
  }

  for (int n = 7; n <= spec.n_max; n += 2) {
    TheoremRecord theorem;
    theorem.bounds = theorem31_bounds(n, params, constants);
    theorem.pass = theorem.bounds.h > 0.0 && theorem.bounds.h_hat > 0.0;
    record.theorem.push_back(theorem);
  }

  for (int n = 3; n <= std::min(spec.n_max, 5); n += 2) {
    const std::vector<double> norms(n, scalars.norm_sq.front());
    const OspMatrix matrix =
        assemble_osp_matrix_scalars(n, norms, scalars.g1, bounds, EnvelopeMode::Min);
    PsdRecord psd;
    psd.report = psd_check(matrix);
    psd.pass = psd.report.psd && psd.report.triangular_nonneg;
    record.psd.push_back(psd);
  }

  record.gated = record.inside_weak_condition;
  bool ok = true;
  for (const auto& c : record.small_n) ok = ok && c.pass;
  for (const auto& t : record.theorem) ok = ok && t.pass;
  for (const auto& p : record.psd) ok = ok && p.pass;
  record.pass = ok;
  return record;
}

void collect_failures(const LambdaRecord& record, std::vector<ReportFailure>& failures) {
  if (!record.gated || record.pass) return;
  for (const auto& c : record.small_n) {
    if (!c.pass) {
      failures.push_back({record.lambda, "small_n:" + std::to_string(c.n),
                          "margin " + format_double(c.margin) + " below tolerance"});
    }
  }
  for (const auto& t : record.theorem) {
    if (!t.pass) {
      failures.push_back({record.lambda, "theorem:" + std::to_string(t.bounds.n),
                          "h " + format_double(t.bounds.h) + ", h_hat " +
                              format_double(t.bounds.h_hat)});
    }
  }
  for (const auto& p : record.psd) {
    if (!p.pass) {
      failures.push_back({record.lambda, "psd:" + std::to_string(p.report.n),
                          "min eigenvalue " + format_double(p.report.min_eigenvalue) +
                              ", triangular sum " + format_double(p.report.triangular_sum)});
    }
  }
}

json check_to_json(const InequalityCheck& c) {
  return json{{"n", c.n},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"margin", c.margin},
              {"scale", c.scale},
              {"weak_factor", c.weak_factor},
              {"pass", c.pass},
              {"outside_weak_condition", c.outside_weak_condition},
              {"quad_error", c.quadrature_error}};
}

json record_to_json(const LambdaRecord& r) {
  json splitting = json::array();
  for (const auto& s : r.splitting) {
    splitting.push_back(json{{"n", s.n},
                             {"delta_min", s.delta_min},
                             {"delta_max", s.delta_max},
                             {"ordered", s.ordered},
                             {"exact", true}});
  }
  json small = json::array();
  for (const auto& c : r.small_n) small.push_back(check_to_json(c));
  json theorem = json::array();
  for (const auto& t : r.theorem) {
    theorem.push_back(json{{"n", t.bounds.n},
                           {"h", t.bounds.h},
                           {"h_bracket", t.bounds.h_bracket},
                           {"h_hat", t.bounds.h_hat},
                           {"h_hat_bracket", t.bounds.h_hat_bracket},
                           {"pass", t.pass},
                           {"exact", true}});
  }
  json psd = json::array();
  for (const auto& p : r.psd) {
    psd.push_back(json{{"n", p.report.n},
                       {"triangular_sum", p.report.triangular_sum},
                       {"min_eigenvalue", p.report.min_eigenvalue},
                       {"matrix_norm", p.report.matrix_norm},
                       {"psd", p.report.psd},
                       {"triangular_nonneg", p.report.triangular_nonneg},
                       {"pass", p.pass}});
  }
  json out{{"lambda", r.lambda},
           {"inside_weak_condition", r.inside_weak_condition},
           {"inside_construction_range", r.inside_construction_range},
           {"weak_factor", r.weak_factor},
           {"splitting", splitting},
           {"small_n", small},
           {"theorem", theorem},
           {"psd", psd},
           {"gated", r.gated},
           {"pass", r.pass}};
  if (r.delta_infinity) out["delta_infinity"] = *r.delta_infinity;
  return out;
}

}  // namespace

void validate(const ScanSpec& spec) {
  if (!(spec.lambda_min > 0.0) || !(spec.lambda_min <= spec.lambda_max)) {
    throw std::invalid_argument("scan spec: need 0 < lambda_min <= lambda_max");
  }
  if (spec.steps < 1) throw std::invalid_argument("scan spec: steps must be >= 1");
  if (spec.n_max < 1 || spec.n_max % 2 == 0) {
    throw std::invalid_argument("scan spec: n_max must be odd and >= 1");
  }
  if (!(spec.mass > 0.0)) throw std::invalid_argument("scan spec: mass must be positive");
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("scan spec: sigma must be positive");
  if (!(spec.quad_tolerance > 0.0)) {
    throw std::invalid_argument("scan spec: quadrature tolerance must be positive");
  }
  if (spec.format != "json" && spec.format != "csv") {
    throw std::invalid_argument("scan spec: format must be json or csv");
  }
}

double lambda_at(const ScanSpec& spec, int index) {
  if (spec.steps == 1) return spec.lambda_min;
  return spec.lambda_min +
         (spec.lambda_max - spec.lambda_min) * static_cast<double>(index) / (spec.steps - 1);
}

int scan_thread_count() {
  const char* env = std::getenv("OSPVERIFY_THREADS");
  if (!env) return 1;
  const int count = std::atoi(env);
  return std::clamp(count, 1, 64);
}

OspReport run_scan(const ScanSpec& spec, const RenormConstants& constants,
                   const ConfigProvenance& provenance) {
  validate(spec);
  validate(constants);

  OspReport report;
  report.spec = spec;
  report.constants = constants;
  report.provenance = provenance;
  report.records.resize(spec.steps);

  const CachedScalars scalars = compute_scalars(spec, 1);
  report.scalars = ScalarProvenance{scalars.norm_sq.front(), scalars.g1, scalars.norm_sq_error,
                                    scalars.g1_error, "min"};

  const int threads = std::min(scan_thread_count(), spec.steps);
  if (threads <= 1) {
    for (int i = 0; i < spec.steps; ++i) {
      report.records[i] = evaluate_lambda(lambda_at(spec, i), spec, constants, scalars);
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int i = next.fetch_add(1); i < spec.steps; i = next.fetch_add(1)) {
        report.records[i] = evaluate_lambda(lambda_at(spec, i), spec, constants, scalars);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // reduction in grid order keeps the failure list deterministic
  for (const auto& record : report.records) collect_failures(record, report.failures);
  return report;
}

OspReport run_check_report(int n, double lambda, const ScanSpec& spec,
                           const RenormConstants& constants, const ConfigProvenance& provenance) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("check: n must be odd and >= 1, got " + std::to_string(n));
  }
  PhysicalParams params{lambda, spec.mass};
  validate(params);
  validate(constants);

  ScanSpec single = spec;
  single.n_max = n;
  single.lambda_min = lambda;
  single.lambda_max = lambda;
  single.steps = 1;
  const CachedScalars scalars = compute_scalars(single, 1);
  LambdaRecord record = evaluate_lambda(lambda, single, constants, scalars);

  if (n >= 7) {
    // matrix for the checked order itself, reported next to the closed bounds
    PhysicalParams p{lambda, spec.mass};
    const SplittingBounds bounds = build_splitting_bounds(p, constants, n);
    const std::vector<double> norms(n, scalars.norm_sq.front());
    const OspMatrix matrix =
        assemble_osp_matrix_scalars(n, norms, scalars.g1, bounds, EnvelopeMode::Min);
    PsdRecord psd;
    psd.report = psd_check(matrix);
    psd.pass = psd.report.psd && psd.report.triangular_nonneg;
    record.psd.push_back(psd);
    // the theorem bounds gate the n >= 7 verdict; the matrix is informative
    bool ok = true;
    for (const auto& c : record.small_n) ok = ok && c.pass;
    for (const auto& t : record.theorem) ok = ok && t.pass;
    record.pass = ok;
  }

  OspReport report;
  report.spec = single;
  report.constants = constants;
  report.provenance = provenance;
  report.scalars = ScalarProvenance{scalars.norm_sq.front(), scalars.g1, scalars.norm_sq_error,
                                    scalars.g1_error, "min"};
  report.records.push_back(std::move(record));
  collect_failures(report.records.front(), report.failures);
  return report;
}

LambdaRecord run_check(int n, double lambda, const ScanSpec& spec,
                       const RenormConstants& constants) {
  return run_check_report(n, lambda, spec, constants).records.front();
}

std::string report_to_json(const OspReport& report) {
  json config{{"lambda_min", report.spec.lambda_min},
              {"lambda_max", report.spec.lambda_max},
              {"steps", report.spec.steps},
              {"n_max", report.spec.n_max},
              {"mass", report.spec.mass},
              {"sigma", report.spec.sigma},
              {"quad_tolerance", report.spec.quad_tolerance},
              {"format", report.spec.format},
              {"constants",
               json{{"a0", report.constants.a0},
                    {"rho0", report.constants.rho0},
                    {"d0", report.constants.d0},
                    {"n3_val", report.constants.n3_val},
                    {"n3_deriv", report.constants.n3_deriv}}},
              {"provenance", json{{"defaulted_keys", report.provenance.defaulted_keys},
                                  {"note", report.provenance.note}}}};

  json records = json::array();
  int gated = 0;
  int passed = 0;
  for (const auto& r : report.records) {
    records.push_back(record_to_json(r));
    if (r.gated) {
      ++gated;
      if (r.pass) ++passed;
    }
  }
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back(json{{"lambda", f.lambda}, {"check", f.check}, {"detail", f.detail}});
  }
  json root{{"schema_version", kReportSchemaVersion},
            {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
            {"semantics", "bound-envelope verification"},
            {"config", config},
            {"scalar_integrals", json{{"norm_sq", report.scalars.norm_sq},
                                      {"g1", report.scalars.g1},
                                      {"norm_sq_error", report.scalars.norm_sq_error},
                                      {"g1_error", report.scalars.g1_error},
                                      {"mode", report.scalars.mode}}},
            {"records", records},
            {"failures", failures},
            {"summary", json{{"records", report.records.size()},
                             {"gated", gated},
                             {"passed", passed},
                             {"all_passed", report.all_passed()}}}};
  return root.dump(2) + "\n";
}

std::string report_to_csv(const OspReport& report) {
  std::string out =
      "lambda,kind,n,delta_min,delta_max,lhs,rhs,margin,weak_factor,h,h_bracket,h_hat,"
      "h_hat_bracket,triangular_sum,min_eigenvalue,pass\n";
  const auto row = [&out](double lambda, const std::string& kind, int n,
                          const std::vector<std::pair<int, double>>& cells, bool pass) {
    // 12 value columns between n and pass
    std::vector<std::string> values(12);
    for (const auto& [column, value] : cells) values[column] = format_double(value);
    out += format_double(lambda) + "," + kind + "," + std::to_string(n);
    for (const auto& v : values) out += "," + v;
    out += std::string(",") + (pass ? "true" : "false") + "\n";
  };
  for (const auto& r : report.records) {
    for (const auto& s : r.splitting) {
      row(r.lambda, "splitting", s.n, {{0, s.delta_min}, {1, s.delta_max}}, s.ordered);
    }
    for (const auto& c : r.small_n) {
      row(r.lambda, "small_n", c.n,
          {{2, c.lhs}, {3, c.rhs}, {4, c.margin}, {5, c.weak_factor}}, c.pass);
    }
    for (const auto& t : r.theorem) {
      row(r.lambda, "theorem", t.bounds.n,
          {{5, 1.0 - 6.0 * r.lambda},
           {6, t.bounds.h},
           {7, t.bounds.h_bracket},
           {8, t.bounds.h_hat},
           {9, t.bounds.h_hat_bracket}},
          t.pass);
    }
    for (const auto& p : r.psd) {
      row(r.lambda, "psd", p.report.n,
          {{10, p.report.triangular_sum}, {11, p.report.min_eigenvalue}}, p.pass);
    }
  }
  return out;
}

}  // namespace osp
