#include "btq/config.hpp"

#include <fstream>

namespace btq {

namespace {

// inline symbol object or a path to a symbol JSON file
std::optional<Symbol> symbol_from_config_value(const ordered_json& value) {
  if (value.is_string()) {
    std::ifstream is(value.get<std::string>());
    if (!is)
      throw std::invalid_argument("config: cannot open symbol file " + value.get<std::string>());
    return symbol_from_json(ordered_json::parse(is));
  }
  return symbol_from_json(value);
}

}  // namespace

void ExperimentConfig::apply_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") command = value.get<std::string>();
    else if (key == "domain") domain = domain_from_name(value.get<std::string>());
    else if (key == "h") h = value.get<double>();
    else if (key == "h_grid") h_grid = value.get<std::vector<double>>();
    else if (key == "N") N = value.get<int>();
    else if (key == "n") n = value.get<int>();
    else if (key == "K") K = value.get<int>();
    else if (key == "margin") margin = value.get<int>();
    else if (key == "R") R = value.get<int>();
    else if (key == "sign") sign = value.get<int>();
    else if (key == "samples") samples = value.get<std::uint64_t>();
    else if (key == "seed") seed = value.get<std::uint64_t>();
    else if (key == "workers") workers = value.get<int>();
    else if (key == "part") part = value.get<std::string>();
    else if (key == "mode") mode = value.get<std::string>();
    else if (key == "out") out = value.get<std::string>();
    else if (key == "phi") phi = symbol_from_config_value(value);
    else if (key == "psi") psi = symbol_from_config_value(value);
    else throw std::invalid_argument("config: unknown field '" + key + "'");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("config: sign must be +1 or -1");
  if (N < 1 || n < 1 || K < 0 || margin < 0 || R < 0)
    throw std::invalid_argument("config: N, n >= 1 and K, margin, R >= 0 required");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["domain"] = domain_name(domain);
  j["h"] = h;
  j["h_grid"] = h_grid;
  j["N"] = N;
  j["n"] = n;
  j["K"] = K;
  j["margin"] = margin;
  j["R"] = R;
  j["sign"] = sign;
  j["samples"] = samples;
  j["seed"] = seed;
  j["workers"] = workers;
  j["part"] = part;
  j["mode"] = mode;
  if (phi) j["phi"] = symbol_to_json(*phi);
  if (psi) j["psi"] = symbol_to_json(*psi);
  j["out"] = out;
  return j;
}

DomainSpec ExperimentConfig::domain_spec() const { return domain_spec(h); }

DomainSpec ExperimentConfig::domain_spec(double h_value) const {
  return domain == Domain::plane ? DomainSpec::plane(h_value) : DomainSpec::disc(h_value);
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  // parse errors carry the byte position in what()
  const ordered_json j = ordered_json::parse(is);
  base.apply_json(j);
  return base;
}

}  // namespace btq
