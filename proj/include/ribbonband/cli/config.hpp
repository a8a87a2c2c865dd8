#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ribbonband/errors.hpp"
#include "ribbonband/params.hpp"

namespace ribbonband::cli {

enum class OutputFormat { Csv, Json };
enum class AsymptoticMode { Weak, Strong, ConstantField, Edges };

/// Bad user input. `field` names the offending key or flag.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  int N = 3;
  std::string potential = "zero";
  int grid_points = 401;
  std::optional<double> t;
  AsymptoticMode mode = AsymptoticMode::Weak;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;
  std::optional<int> m;      // flatband anchor, default N
  std::optional<int> cells;  // flatband section length, default 2N+2
  bool corrupt_offdiag = false;  // verify negative control
};

/// Applies `key = value` lines ('#' starts a comment) on top of `config`.
void apply_config_text(RunConfig& config, std::istream& in, const std::string& source = "config");
void apply_config_file(RunConfig& config, const std::string& path);

/// Sets one key; shared by the file reader and the flag parser.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Checks ranges (grid_points >= 3 and odd, N >= 1, ...).
void validate(const RunConfig& config);

AsymptoticMode parse_mode(const std::string& text);
OutputFormat parse_format(const std::string& text);

/// Potential from a name, a comma list, or a path to a file of numbers.
///   zero                  v = 0
///   constant-field:EPS    v_{2k+1} = EPS k, even rows 0
///   linear-odd:EPS        v_{2k+1} = EPS k, v_{2k} = EPS (k - 2/3)
///   ramp[:S]              v = S (1, 2, ..., p)
RibbonParams resolve_potential(const std::string& spec, int N);

/// Fixed notation, 15 significant digits, trailing zeros removed.
std::string format_number(double x);

}  // namespace ribbonband::cli
