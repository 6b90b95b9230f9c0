#include "carleman/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "carleman/csv.hpp"

namespace carleman {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alpha", "epsilon", "epsilons", "nx", "cfl", "t_end", "dt_par",
      "bc.left.kind", "bc.left.a", "bc.left.b", "bc.left.omega",
      "bc.right.kind", "bc.right.a", "bc.right.b", "bc.right.omega",
      "init.kind", "init.file",
      "init.u0", "init.v0",
      "init.u_left", "init.u_right", "init.v_left", "init.v_right", "init.x_split",
      "init.base", "init.amp", "init.center", "init.width",
      "init.lo", "init.hi", "init.seed",
      "window.t_start_frac", "window.delta",
      "ledger.betas", "output.stride",
      "newton.max_iter", "newton.tol",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  std::ostringstream os;
  os << "config: key '" << key << "' (line " << line << "): " << what;
  throw ConfigError(os.str());
}

struct RawEntry {
  std::string value;
  int line;
};

double parse_double(const std::string& key, const RawEntry& e) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0') fail(key, e.line, "unparsable value '" + e.value + "'");
  return v;
}

long parse_long(const std::string& key, const RawEntry& e) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0') fail(key, e.line, "unparsable value '" + e.value + "'");
  return v;
}

TimeFunction parse_side(const std::map<std::string, RawEntry>& raw, const std::string& prefix) {
  const auto kind_it = raw.find(prefix + ".kind");
  if (kind_it == raw.end()) throw ConfigError("config: missing required key '" + prefix + ".kind'");
  const std::string& kind = kind_it->second.value;
  const int line = kind_it->second.line;

  auto get = [&](const char* sub, bool required, double fallback) {
    const auto it = raw.find(prefix + "." + sub);
    if (it == raw.end()) {
      if (required)
        throw ConfigError("config: missing required key '" + prefix + "." + sub + "'");
      return fallback;
    }
    return parse_double(prefix + "." + sub, it->second);
  };

  if (kind == "constant") return TimeFunction::constant(get("a", true, 0.0));
  if (kind == "ramp") return TimeFunction::ramp(get("a", true, 0.0), get("b", true, 0.0));
  if (kind == "sinusoid")
    return TimeFunction::sinusoid(get("a", true, 0.0), get("b", true, 0.0),
                                  get("omega", true, 0.0));
  fail(prefix + ".kind", line, "must be one of constant|ramp|sinusoid");
}

InitialSpec parse_init(const std::map<std::string, RawEntry>& raw) {
  const auto kind_it = raw.find("init.kind");
  if (kind_it == raw.end()) throw ConfigError("config: missing required key 'init.kind'");
  const std::string& kind = kind_it->second.value;
  const int line = kind_it->second.line;

  auto get = [&](const char* sub, double fallback) {
    const auto it = raw.find(std::string("init.") + sub);
    return it == raw.end() ? fallback : parse_double(std::string("init.") + sub, it->second);
  };

  InitialSpec spec;
  if (kind == "constant") {
    spec.kind = InitialSpec::Kind::Constant;
    spec.u0 = get("u0", spec.u0);
    spec.v0 = get("v0", spec.v0);
  } else if (kind == "step") {
    spec.kind = InitialSpec::Kind::Step;
    spec.u_left = get("u_left", spec.u_left);
    spec.u_right = get("u_right", spec.u_right);
    spec.v_left = get("v_left", spec.v_left);
    spec.v_right = get("v_right", spec.v_right);
    spec.x_split = get("x_split", spec.x_split);
  } else if (kind == "bump") {
    spec.kind = InitialSpec::Kind::Bump;
    spec.base = get("base", spec.base);
    spec.amp = get("amp", spec.amp);
    spec.center = get("center", spec.center);
    spec.width = get("width", spec.width);
  } else if (kind == "random") {
    spec.kind = InitialSpec::Kind::Random;
    spec.lo = get("lo", spec.lo);
    spec.hi = get("hi", spec.hi);
    const auto it = raw.find("init.seed");
    if (it != raw.end())
      spec.seed = static_cast<unsigned long long>(parse_long("init.seed", it->second));
  } else if (kind == "file") {
    spec.kind = InitialSpec::Kind::File;
    const auto it = raw.find("init.file");
    if (it == raw.end()) throw ConfigError("config: missing required key 'init.file'");
    spec.file = it->second.value;
  } else {
    fail("init.kind", line, "must be one of constant|step|bump|random|file");
  }
  return spec;
}

std::vector<double> parse_list(const std::string& key, const RawEntry& e, double alpha,
                               bool allow_alpha_token) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) fail(key, e.line, "empty list entry");
    if (allow_alpha_token && tok == "alpha") {
      out.push_back(alpha);
      continue;
    }
    const char* s = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0') fail(key, e.line, "unparsable list entry '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(key, e.line, "empty list");
  return out;
}

}  // namespace

AppConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");

  std::map<std::string, RawEntry> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!known_keys().count(key)) fail(key, lineno, "unknown key");
    if (raw.count(key)) fail(key, lineno, "duplicate key");
    raw[key] = {value, lineno};
  }

  AppConfig cfg;
  for (const auto& [k, v] : raw) cfg.present.insert(k);

  auto require = [&](const char* key) -> const RawEntry& {
    const auto it = raw.find(key);
    if (it == raw.end()) throw ConfigError(std::string("config: missing required key '") + key + "'");
    return it->second;
  };

  cfg.alpha = parse_double("alpha", require("alpha"));
  if (!(cfg.alpha >= -1.0 && cfg.alpha <= 1.0))
    fail("alpha", raw.at("alpha").line, "alpha must lie in [-1, 1]");

  if (raw.count("epsilon") && raw.count("epsilons"))
    fail("epsilons", raw.at("epsilons").line, "give either epsilon or epsilons, not both");
  if (raw.count("epsilon")) cfg.epsilons = {parse_double("epsilon", raw.at("epsilon"))};
  if (raw.count("epsilons"))
    cfg.epsilons = parse_list("epsilons", raw.at("epsilons"), cfg.alpha, false);
  for (double e : cfg.epsilons)
    if (!(e > 0.0))
      fail(raw.count("epsilon") ? "epsilon" : "epsilons",
           raw.count("epsilon") ? raw.at("epsilon").line : raw.at("epsilons").line,
           "epsilon values must be > 0");

  cfg.nx = static_cast<int>(parse_long("nx", require("nx")));
  if (cfg.nx < 4) fail("nx", raw.at("nx").line, "nx must be >= 4");

  cfg.t_end = parse_double("t_end", require("t_end"));
  if (!(cfg.t_end > 0.0)) fail("t_end", raw.at("t_end").line, "t_end must be > 0");

  if (raw.count("cfl")) {
    cfg.cfl = parse_double("cfl", raw.at("cfl"));
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) fail("cfl", raw.at("cfl").line, "cfl must lie in (0, 1]");
  }
  if (raw.count("dt_par")) {
    cfg.dt_par = parse_double("dt_par", raw.at("dt_par"));
    if (!(cfg.dt_par > 0.0)) fail("dt_par", raw.at("dt_par").line, "dt_par must be > 0");
  }

  cfg.bc.phi_minus = parse_side(raw, "bc.left");
  cfg.bc.phi_plus = parse_side(raw, "bc.right");
  cfg.bc.horizon = cfg.t_end;

  cfg.init = parse_init(raw);

  if (raw.count("window.t_start_frac")) {
    cfg.window.t_start_frac = parse_double("window.t_start_frac", raw.at("window.t_start_frac"));
    if (!(cfg.window.t_start_frac >= 0.0 && cfg.window.t_start_frac < 1.0))
      fail("window.t_start_frac", raw.at("window.t_start_frac").line, "must lie in [0, 1)");
  }
  if (raw.count("window.delta")) {
    cfg.window.delta = parse_double("window.delta", raw.at("window.delta"));
    if (!(cfg.window.delta >= 0.0 && cfg.window.delta < 0.5))
      fail("window.delta", raw.at("window.delta").line, "must lie in [0, 0.5)");
  }

  if (raw.count("ledger.betas")) {
    cfg.ledger_betas = parse_list("ledger.betas", raw.at("ledger.betas"), cfg.alpha, true);
  } else {
    cfg.ledger_betas = {cfg.alpha, 0.0};
  }
  // drop exact duplicates, keep order
  {
    std::vector<double> dedup;
    for (double b : cfg.ledger_betas) {
      bool seen = false;
      for (double d : dedup) seen = seen || d == b;
      if (!seen) dedup.push_back(b);
    }
    cfg.ledger_betas = dedup;
  }
  for (double b : cfg.ledger_betas)
    if (!(b >= -1.0 && b <= 1.0))
      fail("ledger.betas", raw.at("ledger.betas").line, "beta values must lie in [-1, 1]");

  if (raw.count("output.stride")) {
    cfg.stride = parse_long("output.stride", raw.at("output.stride"));
    if (cfg.stride < 1) fail("output.stride", raw.at("output.stride").line, "must be >= 1");
  }
  if (raw.count("newton.max_iter")) {
    cfg.newton.max_iter = static_cast<int>(parse_long("newton.max_iter", raw.at("newton.max_iter")));
    if (cfg.newton.max_iter < 1)
      fail("newton.max_iter", raw.at("newton.max_iter").line, "must be >= 1");
  }
  if (raw.count("newton.tol")) {
    cfg.newton.tol = parse_double("newton.tol", raw.at("newton.tol"));
    if (!(cfg.newton.tol > 0.0)) fail("newton.tol", raw.at("newton.tol").line, "must be > 0");
  }

  return cfg;
}

namespace {

void echo_side(std::ostringstream& os, const char* prefix, const TimeFunction& f) {
  const char* kind = f.kind == TimeFunction::Kind::Constant ? "constant"
                     : f.kind == TimeFunction::Kind::Ramp   ? "ramp"
                                                            : "sinusoid";
  os << prefix << ".kind=" << kind << "\n";
  os << prefix << ".a=" << csv::num(f.a) << "\n";
  if (f.kind != TimeFunction::Kind::Constant) os << prefix << ".b=" << csv::num(f.b) << "\n";
  if (f.kind == TimeFunction::Kind::Sinusoid)
    os << prefix << ".omega=" << csv::num(f.omega) << "\n";
}

}  // namespace

std::string config_echo(const AppConfig& cfg) {
  std::ostringstream os;
  os << "alpha=" << csv::num(cfg.alpha) << "\n";
  if (cfg.epsilons.size() == 1) {
    os << "epsilon=" << csv::num(cfg.epsilons[0]) << "\n";
  } else if (!cfg.epsilons.empty()) {
    os << "epsilons=";
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i)
      os << (i ? "," : "") << csv::num(cfg.epsilons[i]);
    os << "\n";
  }
  os << "nx=" << cfg.nx << "\n";
  os << "cfl=" << csv::num(cfg.cfl) << "\n";
  os << "t_end=" << csv::num(cfg.t_end) << "\n";
  os << "dt_par=" << csv::num(cfg.dt_par) << "\n";
  echo_side(os, "bc.left", cfg.bc.phi_minus);
  echo_side(os, "bc.right", cfg.bc.phi_plus);

  switch (cfg.init.kind) {
    case InitialSpec::Kind::Constant:
      os << "init.kind=constant\ninit.u0=" << csv::num(cfg.init.u0)
         << "\ninit.v0=" << csv::num(cfg.init.v0) << "\n";
      break;
    case InitialSpec::Kind::Step:
      os << "init.kind=step\ninit.u_left=" << csv::num(cfg.init.u_left)
         << "\ninit.u_right=" << csv::num(cfg.init.u_right)
         << "\ninit.v_left=" << csv::num(cfg.init.v_left)
         << "\ninit.v_right=" << csv::num(cfg.init.v_right)
         << "\ninit.x_split=" << csv::num(cfg.init.x_split) << "\n";
      break;
    case InitialSpec::Kind::Bump:
      os << "init.kind=bump\ninit.base=" << csv::num(cfg.init.base)
         << "\ninit.amp=" << csv::num(cfg.init.amp)
         << "\ninit.center=" << csv::num(cfg.init.center)
         << "\ninit.width=" << csv::num(cfg.init.width) << "\n";
      break;
    case InitialSpec::Kind::Random:
      os << "init.kind=random\ninit.lo=" << csv::num(cfg.init.lo)
         << "\ninit.hi=" << csv::num(cfg.init.hi) << "\ninit.seed=" << cfg.init.seed << "\n";
      break;
    case InitialSpec::Kind::File:
      os << "init.kind=file\ninit.file=" << cfg.init.file << "\n";
      break;
  }

  os << "window.t_start_frac=" << csv::num(cfg.window.t_start_frac) << "\n";
  os << "window.delta=" << csv::num(cfg.window.delta) << "\n";
  os << "ledger.betas=";
  for (std::size_t i = 0; i < cfg.ledger_betas.size(); ++i)
    os << (i ? "," : "") << csv::num(cfg.ledger_betas[i]);
  os << "\n";
  os << "output.stride=" << cfg.stride << "\n";
  os << "newton.max_iter=" << cfg.newton.max_iter << "\n";
  os << "newton.tol=" << csv::num(cfg.newton.tol) << "\n";
  return os.str();
}

}  // namespace carleman
