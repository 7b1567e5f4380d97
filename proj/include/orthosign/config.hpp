#pragma once

// Run configuration with a key=value file format.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "orthosign/error.hpp"

namespace orthosign {

struct Config {
  unsigned precision_bits = 64;
  std::size_t cover_max_rows = 6;
  std::size_t cover_max_cols = 24;
  double search_scale = 600.0;
  unsigned search_iterations = 500;
  unsigned search_restarts = 20;
  std::uint64_t seed = 0;
  std::string output_format = "json";  // json | text | csv

  void validate() const {
    if (precision_bits == 0 || cover_max_rows == 0 || cover_max_cols == 0 || !(search_scale > 0) ||
        search_iterations == 0 || search_restarts == 0)
      throw std::invalid_argument("config: budgets must be positive");
    if (output_format != "json" && output_format != "text" && output_format != "csv")
      throw std::invalid_argument("config: outputFormat must be json, text or csv");
  }

  std::string to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "precisionBits=" << precision_bits << '\n'
       << "coverMaxRows=" << cover_max_rows << '\n'
       << "coverMaxCols=" << cover_max_cols << '\n'
       << "searchScale=" << search_scale << '\n'
       << "searchIterations=" << search_iterations << '\n'
       << "searchRestarts=" << search_restarts << '\n'
       << "seed=" << seed << '\n'
       << "outputFormat=" << output_format << '\n';
    return os.str();
  }

  /// Applies "key=value" lines; '#' starts a comment, blank lines are skipped.
  void apply_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      auto trim = [](std::string s) {
        const char* ws = " \t\r";
        s.erase(0, s.find_first_not_of(ws));
        s.erase(s.find_last_not_of(ws) + 1);
        return s;
      };
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw parse_error("expected key=value", lineno, 1);
      std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
      try {
        set(key, value);
      } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), lineno, eq + 2);
      } catch (const std::out_of_range&) {
        throw parse_error("value out of range for " + key, lineno, eq + 2);
      }
    }
    validate();
  }

  void set(const std::string& key, const std::string& value) {
    auto to_u64 = [&] {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(value, &pos);
      if (pos != value.size() || value.find('-') != std::string::npos)
        throw std::invalid_argument("malformed integer '" + value + "' for " + key);
      return static_cast<std::uint64_t>(v);
    };
    if (key == "precisionBits") precision_bits = static_cast<unsigned>(to_u64());
    else if (key == "coverMaxRows") cover_max_rows = to_u64();
    else if (key == "coverMaxCols") cover_max_cols = to_u64();
    else if (key == "searchScale") {
      std::size_t pos = 0;
      search_scale = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("malformed number '" + value + "' for " + key);
    } else if (key == "searchIterations") search_iterations = static_cast<unsigned>(to_u64());
    else if (key == "searchRestarts") search_restarts = static_cast<unsigned>(to_u64());
    else if (key == "seed") seed = to_u64();
    else if (key == "outputFormat") output_format = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }

  static Config load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    Config c;
    c.apply_text(ss.str());
    return c;
  }
};

}  // namespace orthosign
