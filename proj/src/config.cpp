#include "genpoly/config.hpp"

#include <cstdlib>
#include <fstream>

#include "genpoly/errors.hpp"

namespace genpoly {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long long parse_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw PreconditionError("config " + key + ": '" + v + "' is not an integer");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (precision_start == 0 || precision_cap < precision_start) throw PreconditionError("precision cap must be >= the start precision");
  if (sgn(threshold) <= 0) throw PreconditionError("threshold must be positive");
  if (sgn(epsilon) <= 0 || epsilon > Rational(1, 2)) throw PreconditionError("epsilon must lie in (0, 1/2]");
  if (window_cap <= 0 || horizon <= 0) throw PreconditionError("caps must be positive");
  if (jobs == 0) throw PreconditionError("jobs must be positive");
  if (format != "json" && format != "csv" && format != "text") throw PreconditionError("format must be json, csv or text");
}

std::map<std::string, std::string> RunConfig::entries() const {
  return {{"precision_start", std::to_string(precision_start)},
          {"precision_cap", std::to_string(precision_cap)},
          {"threshold", to_string(threshold)},
          {"epsilon", to_string(epsilon)},
          {"window_cap", std::to_string(window_cap)},
          {"horizon", std::to_string(horizon)},
          {"format", format},
          {"seed", std::to_string(seed)},
          {"jobs", std::to_string(jobs)}};
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "precision_start") {
    c.precision_start = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "precision_cap") {
    c.precision_cap = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "threshold") {
    c.threshold = parse_rational(value);
  } else if (key == "epsilon") {
    c.epsilon = parse_rational(value);
  } else if (key == "window_cap") {
    c.window_cap = parse_count(key, value);
  } else if (key == "horizon") {
    c.horizon = parse_count(key, value);
  } else if (key == "format") {
    c.format = value;
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_count(key, value));
  } else if (key == "jobs") {
    c.jobs = static_cast<unsigned>(parse_count(key, value));
  } else {
    throw PreconditionError("unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError(path + ":" + std::to_string(lineno) + ": expected key=value");
    set_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_environment(RunConfig& c) {
  if (const char* cap = std::getenv("GENPOLY_PRECISION_CAP"); cap && *cap) {
    set_config_value(c, "precision_cap", cap);
  }
}

}  // namespace genpoly
