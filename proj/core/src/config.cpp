#include "ness/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ness {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + v + "'", line);
  }
}

int parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + v + "'", line);
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean '" + v + "'", line);
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const std::string& item : split(v, ','))
    if (!item.empty()) out.push_back(parse_double(item, line));
  return out;
}

Boundary parse_boundary(const std::string& v, int line) {
  if (v == "open") return Boundary::Open;
  if (v == "periodic") return Boundary::Periodic;
  throw ConfigError("boundary must be open or periodic", line);
}

// "(re,im) LABEL; (re,im) LABEL" -> PauliSum text (newline separated).
std::string terms_to_text(const std::string& v) {
  std::string text = v;
  std::replace(text.begin(), text.end(), ';', '\n');
  return text;
}

struct KeyHandlerContext {
  ExperimentConfig* cfg;
  int line;
};

void handle_model(ExperimentConfig& cfg, const std::string& key,
                  const std::string& value, int line) {
  ModelSection& m = cfg.model;
  if (key == "kind") {
    if (value == "tfim")
      m.kind = ModelKind::Tfim;
    else if (value == "cqed")
      m.kind = ModelKind::Cqed;
    else if (value == "custom")
      m.kind = ModelKind::Custom;
    else
      throw ConfigError("model kind must be tfim, cqed or custom", line);
  } else if (key == "n")
    m.n = parse_int(value, line);
  else if (key == "g")
    m.g = parse_double(value, line);
  else if (key == "gamma1")
    m.gamma1 = parse_double(value, line);
  else if (key == "gamma2")
    m.gamma2 = parse_double(value, line);
  else if (key == "mu")
    m.mu = parse_double(value, line);
  else if (key == "theta")
    m.theta = parse_double(value, line);
  else if (key == "gamma3")
    m.gamma3 = parse_double(value, line);
  else if (key == "boundary")
    m.boundary = parse_boundary(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [model]", line);
}

void handle_custom(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value, int line) {
  if (key == "n")
    cfg.model.n = parse_int(value, line);
  else if (key == "hamiltonian")
    cfg.model.hamiltonian_text = terms_to_text(value);
  else if (key == "jump") {
    // "<rate> <tag> : <terms>"
    const auto colon = value.find(':');
    if (colon == std::string::npos)
      throw ConfigError("jump needs '<rate> <tag> : <terms>'", line);
    std::istringstream head(trim(value.substr(0, colon)));
    ModelSection::CustomJump jump;
    if (!(head >> jump.rate >> jump.tag))
      throw ConfigError("jump needs '<rate> <tag> : <terms>'", line);
    jump.op_text = terms_to_text(trim(value.substr(colon + 1)));
    cfg.model.custom_jumps.push_back(std::move(jump));
  } else
    throw ConfigError("unknown key '" + key + "' in [custom]", line);
}

void handle_ansatz(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value, int line) {
  if (key == "type") {
    if (value == "decoupled")
      cfg.ansatz.eig_type = EigType::Decoupled;
    else if (value == "entangled")
      cfg.ansatz.eig_type = EigType::Entangled;
    else
      throw ConfigError("ansatz type must be decoupled or entangled", line);
  } else if (key == "d1")
    cfg.ansatz.d1 = parse_int(value, line);
  else if (key == "d2")
    cfg.ansatz.d2 = parse_int(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [ansatz]", line);
}

void handle_optimizer(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value, int line) {
  OptimizerConfig& o = cfg.optimizer;
  if (key == "mode") {
    if (value == "exact")
      o.exact = true;
    else if (value == "sampled")
      o.exact = false;
    else
      throw ConfigError("optimizer mode must be exact or sampled", line);
  } else if (key == "points_single")
    o.points_single = parse_int(value, line);
  else if (key == "points_multi")
    o.points_multi = parse_int(value, line);
  else if (key == "sweeps_max")
    o.sweeps_max = parse_int(value, line);
  else if (key == "tolerance")
    o.tolerance = parse_double(value, line);
  else if (key == "shots_per_term")
    o.shots_per_term = parse_int(value, line);
  else if (key == "guard")
    o.guard = parse_bool(value, line);
  else if (key == "restarts")
    o.restarts = parse_int(value, line);
  else if (key == "cost_target")
    o.cost_target = parse_double(value, line);
  else if (key == "refine_sweeps")
    o.refine_sweeps = parse_int(value, line);
  else if (key == "refine_window")
    o.refine_window = parse_double(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [optimizer]", line);
}

void handle_noise(ExperimentConfig& cfg, const std::string& key,
                  const std::string& value, int line) {
  NoiseConfig& n = cfg.optimizer.noise;
  if (key == "enabled")
    n.enabled = parse_bool(value, line);
  else if (key == "p1")
    n.p1 = parse_double(value, line);
  else if (key == "p2")
    n.p2 = parse_double(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [noise]", line);
  if (n.p1 < 0 || n.p1 > 1 || n.p2 < 0 || n.p2 > 1)
    throw ConfigError("noise rates must lie in [0, 1]", line);
}

void handle_mitigation(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value, int line) {
  if (key == "enabled")
    cfg.optimizer.mitigate = parse_bool(value, line);
  else if (key == "mode") {
    if (value == "rates")
      cfg.mitigation_mode = MitigationMode::Rates;
    else if (value == "folding")
      cfg.mitigation_mode = MitigationMode::Folding;
    else
      throw ConfigError("mitigation mode must be rates or folding", line);
  } else if (key == "factors")
    cfg.optimizer.mitigation.factors = parse_double_list(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [mitigation]", line);
}

void handle_observables(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value, int line) {
  if (key == "list") {
    cfg.observables.clear();
    for (const std::string& item : split(value, ','))
      if (!item.empty()) cfg.observables.push_back(item);
  } else
    throw ConfigError("unknown key '" + key + "' in [observables]", line);
}

void handle_sweep(ExperimentConfig& cfg, const std::string& key,
                  const std::string& value, int line) {
  if (key == "parameter")
    cfg.sweep.parameter = value;
  else if (key == "values")
    cfg.sweep.values = parse_double_list(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [sweep]", line);
}

void handle_landscape(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value, int line) {
  if (key == "parameter")
    cfg.landscape.parameter = parse_int(value, line);
  else if (key == "points")
    cfg.landscape.points = parse_int(value, line);
  else if (key == "theta")
    cfg.landscape.theta = parse_double_list(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [landscape]", line);
}

void handle_scatter(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value, int line) {
  if (key == "sizes") {
    cfg.scatter.sizes.clear();
    for (const std::string& item : split(value, ','))
      if (!item.empty()) cfg.scatter.sizes.push_back(parse_int(item, line));
  } else if (key == "samples")
    cfg.scatter.samples = parse_int(value, line);
  else if (key == "width_min")
    cfg.scatter.width_min = parse_double(value, line);
  else if (key == "width_max")
    cfg.scatter.width_max = parse_double(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [scatter]", line);
}

void handle_run(ExperimentConfig& cfg, const std::string& key,
                const std::string& value, int line) {
  if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "out")
    cfg.out_dir = value;
  else if (key == "threads")
    cfg.threads = parse_int(value, line);
  else
    throw ConfigError("unknown key '" + key + "' in [run]", line);
}

}  // namespace

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.raw_text = text;
  cfg.config_hash = config_hash(text);

  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw ConfigError("malformed section header", line_no);
      section = stripped.substr(1, stripped.size() - 2);
      static const std::vector<std::string> known = {
          "model", "custom",      "ansatz", "optimizer", "noise",
          "mitigation", "observables", "sweep",  "landscape", "scatter",
          "run"};
      if (std::find(known.begin(), known.end(), section) == known.end())
        throw ConfigError("unknown section [" + section + "]", line_no);
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (section.empty())
      throw ConfigError("key outside any section", line_no);

    if (section == "model")
      handle_model(cfg, key, value, line_no);
    else if (section == "custom")
      handle_custom(cfg, key, value, line_no);
    else if (section == "ansatz")
      handle_ansatz(cfg, key, value, line_no);
    else if (section == "optimizer")
      handle_optimizer(cfg, key, value, line_no);
    else if (section == "noise")
      handle_noise(cfg, key, value, line_no);
    else if (section == "mitigation")
      handle_mitigation(cfg, key, value, line_no);
    else if (section == "observables")
      handle_observables(cfg, key, value, line_no);
    else if (section == "sweep")
      handle_sweep(cfg, key, value, line_no);
    else if (section == "landscape")
      handle_landscape(cfg, key, value, line_no);
    else if (section == "scatter")
      handle_scatter(cfg, key, value, line_no);
    else if (section == "run")
      handle_run(cfg, key, value, line_no);
  }
  cfg.ansatz.n_sites = cfg.model.n;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

LindbladModel build_model(const ExperimentConfig& cfg) {
  const ModelSection& m = cfg.model;
  switch (m.kind) {
    case ModelKind::Tfim:
      return tfim_model(m.n, m.g, m.gamma1, m.gamma2,
                        m.boundary.value_or(Boundary::Open));
    case ModelKind::Cqed:
      return cqed_model(m.n, m.mu, m.gamma1, m.gamma2, m.theta,
                        m.boundary.value_or(Boundary::Periodic), m.gamma3);
    case ModelKind::Custom: {
      LindbladModel model;
      model.n_sites = m.n;
      model.hamiltonian = m.hamiltonian_text.empty()
                              ? PauliSum::zero(m.n)
                              : from_text(m.hamiltonian_text).simplify();
      if (model.hamiltonian.n() != m.n)
        throw ConfigError("custom hamiltonian qubit count mismatch");
      for (const auto& jump : m.custom_jumps) {
        PauliSum op = from_text(jump.op_text).simplify();
        if (op.n() != m.n)
          throw ConfigError("custom jump qubit count mismatch");
        model.jumps.push_back({std::move(op), jump.rate, jump.tag});
      }
      model.validate();
      return model;
    }
  }
  throw ConfigError("unreachable model kind");
}

void set_model_parameter(ExperimentConfig& cfg, const std::string& parameter,
                         double value) {
  if (parameter == "g")
    cfg.model.g = value;
  else if (parameter == "gamma1")
    cfg.model.gamma1 = value;
  else if (parameter == "gamma2")
    cfg.model.gamma2 = value;
  else if (parameter == "mu")
    cfg.model.mu = value;
  else if (parameter == "theta")
    cfg.model.theta = value;
  else if (parameter == "gamma3")
    cfg.model.gamma3 = value;
  else
    throw ConfigError("sweep parameter '" + parameter +
                      "' is not a model parameter");
}

LindbladModel build_model_with(const ExperimentConfig& cfg,
                               const std::string& parameter, double value) {
  ExperimentConfig tmp = cfg;
  set_model_parameter(tmp, parameter, value);
  return build_model(tmp);
}

std::vector<Observable> build_observables(const ExperimentConfig& cfg) {
  std::vector<Observable> out;
  const int n = cfg.model.n;
  for (const std::string& name : cfg.observables) {
    if (name == "mx" || name == "my" || name == "mz") {
      out.push_back(magnetization_observable(name[1], n));
    } else if (name.rfind("current", 0) == 0) {
      int site = 0;
      const auto colon = name.find(':');
      if (colon != std::string::npos)
        site = std::stoi(name.substr(colon + 1));
      out.push_back(current_observable(
          site, cfg.model.theta, n,
          cfg.model.boundary.value_or(Boundary::Periodic)));
    } else {
      throw ConfigError("unknown observable '" + name + "'");
    }
  }
  return out;
}

}  // namespace ness
