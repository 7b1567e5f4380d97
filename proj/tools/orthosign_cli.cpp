// orthosign: command-line front end for the sign pattern library.
//
// Exit codes: 0 success / Allows / SIPP, 2 Forbidden / no SIPP / Reject,
// 3 Unknown / not found, 1 usage or internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "orthosign/json.hpp"
#include "orthosign/orthosign.hpp"

namespace fs = std::filesystem;
using namespace orthosign;

namespace {

constexpr int kOk = 0, kError = 1, kNegative = 2, kUnknown = 3;

struct Io {
  Config cfg;
  std::string out_dir;

  void emit(const std::string& name, const Json& j, const std::string& text) const {
    std::string body = cfg.output_format == "json" ? j.dump(2) : text;
    while (!body.empty() && body.back() == '\n') body.pop_back();
    std::cout << body << '\n';
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      std::ofstream(fs::path(out_dir) / (name + ".json")) << j.dump(2) << '\n';
    }
  }

  void write_file(const std::string& name, const std::string& content) const {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    std::ofstream(fs::path(out_dir) / name) << content;
  }
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

/// Pattern from a text file, a pattern JSON, or a matrix JSON (its signs).
SignPattern read_pattern(const std::string& path) {
  std::string text = slurp(path);
  if (!looks_like_json(text)) return parse_pattern(text);
  Json j = parse_json(text);
  if (j.contains("entries")) return pattern_from_json(j);
  if (j.contains("data")) return json_matrix_has_surds(j) ? sgn_of(surd_matrix_from_json(j)) : sgn_of(exact_matrix_from_json(j));
  if (j.contains("pattern")) return pattern_from_json(j.at("pattern"));
  throw parse_error("JSON holds neither a pattern nor a matrix");
}

/// Matrix JSON; a pattern (text or JSON) stands for its (1, -1, 0) realization.
Json read_matrix_json(const std::string& path) {
  std::string text = slurp(path);
  if (!looks_like_json(text)) return to_json(unit_realization(parse_pattern(text)));
  Json j = parse_json(text);
  if (j.contains("data")) return j;
  if (j.contains("entries")) return to_json(unit_realization(pattern_from_json(j)));
  throw parse_error("expected a matrix JSON with a data array");
}

DecideConfig decide_config(const Config& c) {
  DecideConfig d;
  d.cover_limits.max_rows = c.cover_max_rows;
  d.cover_limits.max_cols = c.cover_max_cols;
  d.search.scale = c.search_scale;
  d.search.iterations = c.search_iterations;
  d.search.restarts = c.search_restarts;
  d.search.sqrt_bits = c.precision_bits;
  d.seed = c.seed;
  return d;
}

std::string verdict_text(const Verdict& v) {
  std::string s = to_string(v.status);
  Json e = evidence_to_json(v.evidence);
  if (e.is_object()) s += " (" + e.at("kind").get<std::string>() + ")";
  return s;
}

int run_check(const Io& io, const std::string& path) {
  SignPattern s = read_pattern(path);
  Verdict v = decide_allows(s, decide_config(io.cfg));
  io.emit("check", to_json(v, s), verdict_text(v));
  return v.status == Status::Allows ? kOk : v.status == Status::Forbidden ? kNegative : kUnknown;
}

int run_sipp(const Io& io, const std::string& path, bool use_float) {
  Json j = read_matrix_json(path);
  Json out;
  bool has = false;
  if (use_float) {
    auto v = sipp_check_float(to_float(exact_matrix_from_json(j)));
    has = v.has_sipp;
    out = to_json(v);
  } else if (json_matrix_has_surds(j)) {
    auto a = surd_matrix_from_json(j);
    auto v = sipp_check_exact(a);
    if (v.witness && !is_sipp_witness(a, *v.witness)) throw std::logic_error("sipp: witness failed re-check");
    has = v.has_sipp;
    out = to_json(v);
  } else {
    auto a = exact_matrix_from_json(j);
    auto v = sipp_check_exact(a);
    if (v.witness && !is_sipp_witness(a, *v.witness)) throw std::logic_error("sipp: witness failed re-check");
    has = v.has_sipp;
    out = to_json(v);
  }
  io.emit("sipp", out, has ? "SIPP" : "no SIPP");
  return has ? kOk : kNegative;
}

int run_verify(const Io& io, const std::string& path) {
  Json j = read_matrix_json(path);
  ExactMatrix a = exact_matrix_from_json(j);
  auto rep = verify_certificate(a, io.cfg.precision_bits);
  Json out = to_json(rep);
  if (j.contains("pattern")) {
    bool match = pattern_from_json(j.at("pattern")) == sgn_of(a);
    out["patternMatches"] = match;
    if (!match) {
      out["verdict"] = "Reject";
      out["reason"] = "declared pattern differs from the signs of the matrix";
      io.emit("verify-cert", out, "Reject");
      return kNegative;
    }
  }
  if (rep.accepted()) out["projectionPreservesSigns"] = projection_preserves_signs(a);
  std::string text = std::string(rep.accepted() ? "Accept" : "Reject") + " delta=" + to_string(rep.delta);
  io.emit("verify-cert", out, text);
  return rep.accepted() ? kOk : kNegative;
}

int run_find(const Io& io, const std::string& path) {
  SignPattern s = read_pattern(path);
  SearchConfig sc = decide_config(io.cfg).search;
  auto a = find_certificate(s, sc, io.cfg.seed);
  if (!a) {
    Json out{{"pattern", to_json(s)}, {"found", false}};
    io.emit("find-cert", out, "not found");
    return kUnknown;
  }
  Json out = certificate_file(*a);
  out["report"] = to_json(verify_certificate(*a, io.cfg.precision_bits));
  io.emit("find-cert", out, format_pattern(s) + "\ncertificate found");
  return kOk;
}

struct SimArgs {
  std::size_t m = 4, n = 0, r = 0, trials = 1000;
  std::string p = "1/2";
  bool exact_oracle = false;
  std::size_t sweep_to = 0, sweep_step = 1;
};

int run_simulate(const Io& io, const SimArgs& a) {
  Rational p = parse_rational(a.p);
  std::size_t n = a.n ? a.n : cover_min_columns(a.m, p, a.r);
  auto rep = cover_probability(a.m, n, p, a.r, a.trials, io.cfg.seed, a.exact_oracle);
  Json out = to_json(rep);
  std::ostringstream csv;
  csv << "m,n,p,r,empirical,lo,hi,bound\n";
  auto row = [&](const SimulationReport& s) {
    csv << s.m << ',' << s.n << ',' << to_string(s.p) << ',' << s.r << ',' << s.empirical << ',' << s.wilson.lo << ','
        << s.wilson.hi << ',' << to_double(s.lower_bound) << '\n';
  };
  row(rep);
  if (a.sweep_to > n) {
    Json sweep = Json::array();
    for (std::size_t k = n + a.sweep_step; k <= a.sweep_to; k += a.sweep_step) {
      auto s = cover_probability(a.m, k, p, a.r, a.trials, io.cfg.seed, a.exact_oracle);
      row(s);
      sweep.push_back(to_json(s));
    }
    out["sweep"] = std::move(sweep);
  }
  io.write_file("simulate.csv", csv.str());
  if (io.cfg.output_format == "csv") {
    std::cout << csv.str();
    io.write_file("simulate.json", out.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream text;
  text << "empirical " << rep.empirical << " [" << rep.wilson.lo << ", " << rep.wilson.hi << "], bound "
       << to_double(rep.lower_bound) << (rep.bound_applicable ? "" : " (bound not applicable)");
  io.emit("simulate", out, text.str());
  return kOk;
}

int run_classify(const Io& io, std::size_t m, std::size_t max_n, bool full, bool all) {
  ClassifyOptions opt;
  opt.restricted = !full;
  opt.decide = decide_config(io.cfg);
  auto run = minimal_allows(m, max_n, opt);
  std::string table = render_table(run);
  io.write_file("table.txt", table);
  io.emit("classify", to_json(run, all), table);
  return run.incomplete ? kUnknown : kOk;
}

int run_construct(const Io& io, const std::string& name, bool list) {
  if (list) {
    Json names = fixture_names();
    std::string text;
    for (const auto& n : fixture_names()) text += n + "\n";
    io.emit("construct", names, text);
    return kOk;
  }
  Fixture f = paper_fixture(name);
  Json out;
  std::string text;
  if (auto p = std::get_if<SignPattern>(&f)) {
    out = to_json(*p);
    text = format_pattern(*p);
  } else if (auto a = std::get_if<ExactMatrix>(&f)) {
    out = to_json(*a);
    out["pattern"] = to_json(sgn_of(*a));
    if (name.rfind("cert-", 0) == 0) out = certificate_file(*a);
    text = format_pattern(sgn_of(*a));
  } else {
    const auto& s = std::get<SurdMatrix>(f);
    out = to_json(s);
    out["pattern"] = to_json(sgn_of(s));
    text = format_pattern(sgn_of(s));
  }
  out["name"] = name;
  io.emit("construct", out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and certify whether sign patterns allow row orthogonality"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir, format;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "key=value config file");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized paths");
  app.add_option("--out", out_dir, "directory for written artifacts");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));

  std::string input;
  bool use_float = false, full = false, all = false, list = false;
  std::size_t cm = 4, cmax = 0;
  SimArgs sim;

  auto* check = app.add_subcommand("check", "decide whether a pattern allows row orthogonality");
  check->add_option("input", input, "pattern file (text or JSON), '-' for stdin")->required();
  auto* sipp = app.add_subcommand("sipp", "decide the SIPP for a matrix JSON");
  sipp->add_option("input", input, "matrix JSON")->required();
  sipp->add_flag("--float", use_float, "numerical rank instead of exact elimination");
  auto* verify = app.add_subcommand("verify-cert", "verify an integer certificate matrix");
  verify->add_option("input", input, "certificate JSON")->required();
  auto* find = app.add_subcommand("find-cert", "search for an integer certificate");
  find->add_option("input", input, "pattern file")->required();
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo cover probability");
  simulate->add_option("--m", sim.m)->required();
  simulate->add_option("--n", sim.n, "columns (default: smallest n meeting the bound's hypothesis)");
  simulate->add_option("--p", sim.p, "rational p in (0, 1/2]");
  simulate->add_option("--r", sim.r);
  simulate->add_option("--trials", sim.trials);
  simulate->add_flag("--exact-oracle", sim.exact_oracle);
  simulate->add_option("--sweep-to", sim.sweep_to, "also run n+step..sweep-to");
  simulate->add_option("--sweep-step", sim.sweep_step)->check(CLI::PositiveNumber);
  auto* classify = app.add_subcommand("classify", "minimal classes of nowhere-zero patterns");
  classify->add_option("--m", cm)->required();
  classify->add_option("--max-n", cmax);
  classify->add_flag("--full", full, "unrestricted 5 x 6 sweep");
  classify->add_flag("--all", all, "list every class, not only minimal ones");
  auto* construct = app.add_subcommand("construct", "emit a named fixture");
  construct->add_option("name", input);
  construct->add_flag("--list", list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }

  try {
    Io io;
    if (!config_path.empty()) io.cfg = Config::load_file(config_path);
    if (const char* env = std::getenv("ORTHOSIGN_SEED")) io.cfg.set("seed", env);
    if (const char* env = std::getenv("ORTHOSIGN_OUT")) io.out_dir = env;
    if (*seed_opt) io.cfg.seed = seed;
    if (!out_dir.empty()) io.out_dir = out_dir;
    if (!format.empty()) io.cfg.output_format = format;
    io.cfg.validate();

    if (*check) return run_check(io, input);
    if (*sipp) return run_sipp(io, input, use_float);
    if (*verify) return run_verify(io, input);
    if (*find) return run_find(io, input);
    if (*simulate) return run_simulate(io, sim);
    if (*classify) return run_classify(io, cm, cmax ? cmax : cm + 1, full, all);
    if (*construct) {
      if (!list && input.empty()) throw CLI::RequiredError("name");
      return run_construct(io, input, list);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
