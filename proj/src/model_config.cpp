#include "osp/model_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace osp {

namespace {

const std::map<std::string, int>& known_keys() {
  // value: 0 = required physical, 1 = optional renorm constant
  static const std::map<std::string, int> keys = {
      {"lambda", 0},  {"mass", 0},    {"a0", 1},
      {"rho0", 1},    {"d0", 1},      {"n3_val", 1},
      {"n3_deriv", 1},
  };
  return keys;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse value for '" + key + "': '" + text + "'");
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, double> parse_key_values(const std::string& document) {
  std::map<std::string, double> values;
  const std::string body = trim(document);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("config: JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, val] : j.items()) {
      if (!known_keys().count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
      if (!val.is_number()) throw std::invalid_argument("config: value of '" + key + "' must be a number");
      values[key] = val.get<double>();
    }
    return values;
  }
  std::istringstream in(document);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (!known_keys().count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    if (values.count(key)) throw std::invalid_argument("config: duplicate key '" + key + "'");
    values[key] = parse_number(key, value);
  }
  return values;
}

}  // namespace

double RenormConstants::gamma_max(double lambda) const {
  return 1.0 + 9.0 * lambda * (1.0 + 6.0 * lambda * lambda);
}

void validate(const PhysicalParams& params) {
  if (!std::isfinite(params.lambda) || params.lambda <= 0.0) {
    throw std::invalid_argument("lambda must be positive");
  }
  if (!std::isfinite(params.mass) || params.mass <= 0.0) {
    throw std::invalid_argument("mass must be positive");
  }
}

void validate(const RenormConstants& constants) {
  const struct {
    const char* name;
    double value;
  } fields[] = {{"a0", constants.a0},
                {"rho0", constants.rho0},
                {"d0", constants.d0},
                {"n3_val", constants.n3_val},
                {"n3_deriv", constants.n3_deriv}};
  for (const auto& f : fields) {
    if (!std::isfinite(f.value) || f.value < 0.0) {
      throw std::invalid_argument(std::string(f.name) + " must be finite and >= 0");
    }
  }
}

ModelConfig load_config(const std::string& document) {
  const auto values = parse_key_values(document);
  if (!values.count("lambda")) throw std::invalid_argument("config: missing required key 'lambda'");
  if (!values.count("mass")) throw std::invalid_argument("config: missing required key 'mass'");

  ModelConfig config;
  config.params.lambda = values.at("lambda");
  config.params.mass = values.at("mass");
  validate(config.params);

  const auto fetch = [&](const char* key, double& slot) {
    auto it = values.find(key);
    if (it == values.end()) {
      config.provenance.defaulted_keys.push_back(key);
      return;
    }
    slot = it->second;
  };
  fetch("a0", config.constants.a0);
  fetch("rho0", config.constants.rho0);
  fetch("d0", config.constants.d0);
  fetch("n3_val", config.constants.n3_val);
  fetch("n3_deriv", config.constants.n3_deriv);
  validate(config.constants);

  if (!config.provenance.defaulted_keys.empty()) config.provenance.note = "defaults applied";
  return config;
}

ModelConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

}  // namespace osp
