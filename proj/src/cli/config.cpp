#include "ribbonband/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace ribbonband::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// from_chars rejects a leading '+'.
std::string unsigned_form(const std::string& text) {
  const std::string t = trim(text);
  return (t.size() > 1 && t[0] == '+' && t[1] != '-') ? t.substr(1) : t;
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = unsigned_form(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw ConfigError(field, "not a finite number: '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& field, const std::string& text) {
  const std::string t = unsigned_form(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw ConfigError(field, "not an integer: '" + text + "'");
  return value;
}

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_double(field, token));
  return out;
}

bool looks_numeric(const std::string& text) {
  return !text.empty() && text.find_first_not_of("0123456789+-.eE, \t") == std::string::npos;
}

}  // namespace

AsymptoticMode parse_mode(const std::string& text) {
  if (text == "weak") return AsymptoticMode::Weak;
  if (text == "strong") return AsymptoticMode::Strong;
  if (text == "constant-field") return AsymptoticMode::ConstantField;
  if (text == "edges") return AsymptoticMode::Edges;
  throw ConfigError("mode", "expected weak|strong|constant-field|edges, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format", "expected csv|json, got '" + text + "'");
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "N") {
    config.N = parse_int("N", v);
  } else if (key == "potential") {
    config.potential = v;
  } else if (key == "grid_points" || key == "grid") {
    config.grid_points = parse_int("grid_points", v);
  } else if (key == "t") {
    config.t = parse_double("t", v);
  } else if (key == "mode") {
    config.mode = parse_mode(v);
  } else if (key == "format") {
    config.format = parse_format(v);
  } else if (key == "out" || key == "output_path") {
    config.output_path = v;
  } else if (key == "m") {
    config.m = parse_int("m", v);
  } else if (key == "L" || key == "cells") {
    config.cells = parse_int("L", v);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

void apply_config_text(RunConfig& config, std::istream& in, const std::string& source) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(number), "expected 'key = value'");
    }
    set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  apply_config_text(config, in, path);
}

void validate(const RunConfig& config) {
  if (config.N < 1) throw ConfigError("N", "must be >= 1");
  if (config.N > 200) throw ConfigError("N", "must be <= 200");
  if (config.grid_points < 3 || config.grid_points % 2 == 0) {
    throw ConfigError("grid_points", "must be odd and >= 3, got " + std::to_string(config.grid_points));
  }
  if (config.t && !(*config.t > 0.0)) throw ConfigError("t", "must be positive");
  if (config.cells && *config.cells < 2) throw ConfigError("L", "must be >= 2");
}

RibbonParams resolve_potential(const std::string& spec, int N) {
  const int p = 2 * N + 1;
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto require_arg = [&](const char* what) {
    if (arg.empty()) throw ConfigError("potential", std::string(what) + " needs a value, e.g. " + name + ":1e-3");
    return parse_double("potential", arg);
  };

  std::vector<double> v(static_cast<std::size_t>(p), 0.0);
  if (name == "zero") {
    // v = 0
  } else if (name == "constant-field") {
    const double eps = require_arg("constant-field");
    for (int k = 0; k <= N; ++k) v[static_cast<std::size_t>(2 * k)] = eps * k;
  } else if (name == "linear-odd") {
    const double eps = require_arg("linear-odd");
    for (int k = 0; k <= N; ++k) v[static_cast<std::size_t>(2 * k)] = eps * k;
    for (int k = 1; k <= N; ++k) v[static_cast<std::size_t>(2 * k - 1)] = eps * (k - 2.0 / 3.0);
  } else if (name == "ramp") {
    const double s = arg.empty() ? 1.0 : parse_double("potential", arg);
    for (int k = 1; k <= p; ++k) v[static_cast<std::size_t>(k - 1)] = s * k;
  } else if (looks_numeric(spec)) {
    v = parse_list("potential", spec);
  } else if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream buffer;
    buffer << in.rdbuf();
    v = parse_list("potential", buffer.str());
  } else {
    throw ConfigError("potential", "unknown potential '" + spec + "' (expected a name, a comma list or a file)");
  }
  if (v.size() != static_cast<std::size_t>(p)) {
    throw ConfigError("potential", "needs p = 2N+1 = " + std::to_string(p) + " entries, got " + std::to_string(v.size()));
  }
  return {N, std::move(v)};
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::clamp(14 - exponent, 0, 40);
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  std::string s(buf, ec == std::errc() ? ptr : buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace ribbonband::cli
