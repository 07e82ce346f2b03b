#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "genpoly/certified_real.hpp"

namespace genpoly {

/// Everything a report depends on besides its inputs. Serialized with every report.
struct RunConfig {
  unsigned precision_start = 128;
  unsigned precision_cap = 4096;
  Rational threshold{1000};        // N in a >> b
  Rational epsilon{1, 10};         // default eps for constraint sets
  long long window_cap = 10'000'000;
  long long horizon = 100'000;
  std::string format = "json";     // json, csv, text
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  PrecisionPolicy policy() const { return PrecisionPolicy{precision_start, precision_cap}; }
  /// Throws PreconditionError on a non-positive cap or an unknown format.
  void validate() const;
  std::map<std::string, std::string> entries() const;
};

/// Applies one key=value pair. Throws PreconditionError on unknown keys or bad values.
void set_config_value(RunConfig& c, const std::string& key, const std::string& value);
/// key=value lines; blank lines and lines starting with '#' are skipped.
void load_config_file(RunConfig& c, const std::string& path);
/// GENPOLY_PRECISION_CAP.
void apply_environment(RunConfig& c);

}  // namespace genpoly
