#include "sols/config.hpp"

#include <fstream>
#include <sstream>

namespace sols {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + s + "'");
  }
}

long to_long(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + s + "'");
  }
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + s + "'");
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& raw) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;

  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError("config line without '=': " + raw);
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));

  if (key == "class_file") cfg.class_file = value;
  else if (key == "num_functions") cfg.num_functions = static_cast<int>(to_long(value, key));
  else if (key == "num_contexts") cfg.num_contexts = static_cast<int>(to_long(value, key));
  else if (key == "num_actions") cfg.num_actions = static_cast<int>(to_long(value, key));
  else if (key == "bound") cfg.bound = to_double(value, key);
  else if (key == "truth_id") cfg.truth_id = static_cast<int>(to_long(value, key));
  else if (key == "min_gap") cfg.min_gap = to_double(value, key);
  else if (key == "context_process") cfg.context_process = value;
  else if (key == "noise") cfg.noise = value;
  else if (key == "sigma" || key == "sigma_list" || key == "sigma_phase")
    cfg.sigma_spec = key + "=" + value;
  else if (key == "horizon") cfg.horizon = to_long(value, key);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(value, key));
  else if (key == "policy") cfg.policy = parse_policy(value);
  else if (key == "delta") cfg.delta = to_double(value, key);
  else if (key == "c_ols") cfg.c_ols = to_double(value, key);
  else if (key == "c_prime") cfg.c_prime = to_double(value, key);
  else if (key == "c_sigma") cfg.c_sigma = to_double(value, key);
  else if (key == "sigma_known_sq") cfg.sigma_known_sq = to_double(value, key);
  else if (key == "per_round_union") cfg.per_round_union = to_bool(value, key);
  else if (key == "diagnostics") cfg.diagnostics = to_bool(value, key);
  else throw ConfigError("unknown config key: " + key);
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
  if (!(cfg.delta > 0 && cfg.delta < 1)) throw ConfigError("delta must lie in (0,1)");
  if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

namespace {

VarianceSchedule parse_sigma_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("bad sigma spec: " + spec);
  const std::string key = spec.substr(0, eq);
  const std::string value = trim(spec.substr(eq + 1));
  if (key == "sigma") {
    return VarianceSchedule::constant_sigma(to_double(value, key));
  }
  if (key == "sigma_list") {
    std::vector<double> sigmas;
    for (const auto& item : split(value, ',')) sigmas.push_back(to_double(item, key));
    if (sigmas.empty()) throw ConfigError("sigma_list is empty");
    return VarianceSchedule::from_list(std::move(sigmas));
  }
  if (key == "sigma_phase") {
    std::vector<std::pair<long, double>> phases;
    for (const auto& item : split(value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("bad sigma_phase entry: " + item);
      phases.emplace_back(to_long(trim(item.substr(0, colon)), key),
                          to_double(trim(item.substr(colon + 1)), key));
    }
    if (phases.empty()) throw ConfigError("sigma_phase is empty");
    return VarianceSchedule::from_phases(std::move(phases));
  }
  throw ConfigError("bad sigma spec key: " + key);
}

ContextProcess parse_context_process(const std::string& spec) {
  ContextProcess p;
  if (spec == "iid") {
    p.kind = ContextKind::iid_uniform;
    return p;
  }
  const auto colon = spec.find(':');
  const std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  if (head != "cycle" && head != "list") throw ConfigError("bad context_process: " + spec);
  p.kind = head == "cycle" ? ContextKind::cycle : ContextKind::listed;
  if (colon == std::string::npos) throw ConfigError("context_process " + head + " needs ids");
  for (const auto& item : split(spec.substr(colon + 1), ',')) {
    p.sequence.push_back(static_cast<int>(to_long(item, "context_process")));
  }
  return p;
}

NoiseKind parse_noise(const std::string& name) {
  if (name == "zero") return NoiseKind::zero;
  if (name == "rademacher") return NoiseKind::rademacher;
  if (name == "truncated_gaussian") return NoiseKind::truncated_gaussian;
  throw ConfigError("unknown noise kind: " + name);
}

}  // namespace

EnvironmentSpec build_environment(const RunConfig& cfg) {
  EnvironmentSpec spec;
  if (!cfg.class_file.empty()) {
    spec.fclass = load_class(cfg.class_file);
  } else {
    Rng class_rng(stream_seed(cfg.seed, StreamTag::class_gen));
    spec.fclass = random_class(cfg.num_functions, cfg.num_contexts, cfg.num_actions, cfg.bound,
                               class_rng, cfg.truth_id, cfg.min_gap);
  }
  spec.truth_id = cfg.truth_id;
  spec.contexts = parse_context_process(cfg.context_process);
  spec.noise.kind = parse_noise(cfg.noise);
  spec.noise.schedule = parse_sigma_spec(cfg.sigma_spec);
  spec.horizon = cfg.horizon;
  validate_environment(spec);

  if (cfg.policy == PolicyKind::sols_known) {
    const double known =
        cfg.sigma_known_sq >= 0 ? cfg.sigma_known_sq : spec.fclass.bound * spec.fclass.bound;
    const double max_sigma = spec.noise.schedule.max_sigma(spec.horizon);
    if (known < max_sigma * max_sigma) {
      throw ConfigError("sols_known requires sigma_known_sq >= max_t sigma_t^2");
    }
  }
  return spec;
}

PolicyParams build_policy_params(const RunConfig& cfg) {
  PolicyParams p;
  p.radius.bound = cfg.bound;
  p.radius.delta = cfg.delta;
  p.radius.c_ols = cfg.c_ols;
  p.radius.c_prime = cfg.c_prime;
  p.radius.per_round_union = cfg.per_round_union;
  p.sigma_known_sq = cfg.sigma_known_sq >= 0 ? cfg.sigma_known_sq : cfg.bound * cfg.bound;
  p.c_sigma = cfg.c_sigma;
  return p;
}

}  // namespace sols
