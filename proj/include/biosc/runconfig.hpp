#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/model.hpp"

namespace biosc {

enum class OutputFormat { csv, json };

// Full run configuration; the embedded ModelParams invariants are enforced
// at load time with a line/field-precise message.
struct RunConfig {
  ModelParams model{-1.0, sqrt_pi / 2.0, pi / 4.0, 0.0, 1.0};
  GridSpec grid{};
  int truncation = 30;
  std::vector<double> w_list{0.0, 0.1, 0.5, 1.0, 2.0, 3.0};
  std::vector<double> eps_list{0.5, -1.0, -3.0, -5.0};
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty = stdout
};

class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error(where + ": not a number: '" + v + "'");
  }
}

inline std::vector<double> parse_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item, where));
  }
  if (out.empty()) throw config_error(where + ": empty list");
  return out;
}

}  // namespace detail

// Flat key-value INI parser: [section] headers, key = value, '#'/';' comments.
inline RunConfig parse_config(std::istream& in, const std::string& source_name = "<config>") {
  RunConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  int model_section_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error(where + ": unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section == "model") model_section_line = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error(where + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    const std::string field = where + ": [" + section + "]." + key;

    if (section == "model") {
      if (key == "eps") cfg.model.eps = detail::parse_number(val, field);
      else if (key == "lambda") cfg.model.lambda = detail::parse_number(val, field);
      else if (key == "a") cfg.model.a = detail::parse_number(val, field);
      else if (key == "b") cfg.model.b = detail::parse_number(val, field);
      else if (key == "c") cfg.model.c = detail::parse_number(val, field);
      else throw config_error(field + ": unknown key");
    } else if (section == "grid") {
      if (key == "x_min") cfg.grid.x_min = detail::parse_number(val, field);
      else if (key == "x_max") cfg.grid.x_max = detail::parse_number(val, field);
      else if (key == "n_points") {
        const double n = detail::parse_number(val, field);
        if (n < 2 || n != std::floor(n)) throw config_error(field + ": must be an integer >= 2");
        cfg.grid.n_points = static_cast<std::size_t>(n);
      } else throw config_error(field + ": unknown key");
    } else if (section == "truncation") {
      if (key == "n") {
        const double n = detail::parse_number(val, field);
        if (n < 3 || n != std::floor(n)) throw config_error(field + ": must be an integer >= 3");
        cfg.truncation = static_cast<int>(n);
      } else throw config_error(field + ": unknown key");
    } else if (section == "lists") {
      if (key == "w_list") cfg.w_list = detail::parse_list(val, field);
      else if (key == "eps_list") cfg.eps_list = detail::parse_list(val, field);
      else throw config_error(field + ": unknown key");
    } else if (section == "output") {
      if (key == "format") {
        if (val == "csv") cfg.output_format = OutputFormat::csv;
        else if (val == "json") cfg.output_format = OutputFormat::json;
        else throw config_error(field + ": must be csv or json");
      } else if (key == "path") cfg.output_path = val;
      else throw config_error(field + ": unknown key");
    } else {
      throw config_error(where + ": unknown section [" + section + "]");
    }
  }
  try {
    cfg.model.validate();
    cfg.grid.validate();
  } catch (const std::invalid_argument& e) {
    const std::string at = model_section_line > 0
        ? source_name + ":" + std::to_string(model_section_line) + ": "
        : source_name + ": ";
    throw config_error(at + e.what());
  }
  for (const double e : cfg.eps_list)
    if (!(e < 1.0)) throw config_error(source_name + ": [lists].eps_list: every eps must be < 1");
  for (const double w : cfg.w_list)
    if (!(w >= 0.0)) throw config_error(source_name + ": [lists].w_list: every w must be >= 0");
  return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path + ": cannot open config file");
  return parse_config(in, path);
}

// Built-in presets. The fig1* sets pin eps only; a, b, c, lambda follow
// the fig5 pattern scaled to satisfy 4ac - b^2 = 4 lambda^2: PT-symmetric
// sets use b = 0, a = pi/4, c = 1, lambda = sqrt(pi)/2; the non-symmetric
// ones b = sqrt(pi)/2, lambda = sqrt(3 pi)/4.
inline const std::map<std::string, std::string>& builtin_presets() {
  static const std::map<std::string, std::string> presets = [] {
    const std::string pt_model =
        "[model]\n"
        "lambda = 0.88622692545275801\n"   // sqrt(pi)/2
        "a = 0.78539816339744831\n"        // pi/4
        "b = 0\n"
        "c = 1\n";
    const std::string npt_model =
        "[model]\n"
        "lambda = 0.7674950309598664\n"    // sqrt(3 pi)/4
        "a = 0.78539816339744831\n"
        "b = 0.88622692545275801\n"
        "c = 1\n";
    const std::string tail =
        "[grid]\nx_min = -10\nx_max = 10\nn_points = 2001\n"
        "[truncation]\nn = 30\n"
        "[lists]\nw_list = 0, 0.1, 0.5, 1, 2, 3\neps_list = 0.5, -1, -3, -5\n";
    std::map<std::string, std::string> m;
    m["fig1a"] = pt_model + "eps = 0.5\n" + tail;
    m["fig1b"] = pt_model + "eps = -3\n" + tail;
    m["fig1c"] = pt_model + "eps = -5\n" + tail;
    m["fig1d"] = npt_model + "eps = 0.5\n" + tail;
    m["fig1e"] = npt_model + "eps = -3\n" + tail;
    m["fig1f"] = npt_model + "eps = -5\n" + tail;
    m["fig3"] = pt_model + "eps = -1\n" + tail +
                "# natural-variance sweep over eps_list\n[lists]\neps_list = 0.5, -3, -5\n";
    m["fig4"] = pt_model + "eps = -1\n" + tail +
                "# distorted-variance sweep over w_list (w > 0)\n[lists]\nw_list = 0.1, 0.5, 1, 2, 3\n";
    m["fig5a"] = pt_model + "eps = -1\n" + tail;
    m["fig5b"] = npt_model + "eps = -1\n" + tail;
    return m;
  }();
  return presets;
}

// Preset lookup; BIOSC_PRESET_DIR overrides the built-in location, reading
// <dir>/<name>.ini instead.
inline RunConfig load_preset(const std::string& name) {
  if (const char* dir = std::getenv("BIOSC_PRESET_DIR")) {
    const std::string path = std::string(dir) + "/" + name + ".ini";
    std::ifstream in(path);
    if (!in) throw config_error(path + ": preset '" + name + "' not found in BIOSC_PRESET_DIR");
    return parse_config(in, path);
  }
  const auto& presets = builtin_presets();
  const auto it = presets.find(name);
  if (it == presets.end()) {
    std::string known;
    for (const auto& [k, v] : presets) known += (known.empty() ? "" : ", ") + k;
    throw config_error("unknown preset '" + name + "' (known: " + known + ")");
  }
  std::istringstream in(it->second);
  return parse_config(in, "preset:" + name);
}

}  // namespace biosc
