#pragma once

// JSON encodings of patterns, matrices, verdicts and reports.

#include <json.hpp>

#include <string>
#include <variant>

#include "orthosign/certificate.hpp"
#include "orthosign/classify.hpp"
#include "orthosign/combinatorics.hpp"
#include "orthosign/matrix.hpp"
#include "orthosign/pattern.hpp"
#include "orthosign/random_sim.hpp"
#include "orthosign/sipp.hpp"

namespace orthosign {

using Json = nlohmann::ordered_json;

// --- patterns ---------------------------------------------------------------

inline Json to_json(const SignPattern& s) {
  return Json{{"rows", s.rows()}, {"cols", s.cols()}, {"entries", s.entry_string()}};
}

inline SignPattern pattern_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw parse_error("pattern JSON needs rows, cols and entries");
  const auto m = j.at("rows").get<std::size_t>(), n = j.at("cols").get<std::size_t>();
  const auto e = j.at("entries").get<std::string>();
  if (e.size() != m * n) throw parse_error("pattern JSON: entries length does not match rows*cols");
  std::string text;
  for (std::size_t i = 0; i < m; ++i) text += e.substr(i * n, n) + "\n";
  return parse_pattern(text);
}

// --- matrices ---------------------------------------------------------------

template <class T>
Json to_json(const Matrix<T>& a) {
  Json data = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        if (a(i, j).get_den() == 1 && a(i, j).get_num().fits_slong_p())
          row.push_back(a(i, j).get_num().get_si());
        else
          row.push_back(to_string(a(i, j)));
      } else if constexpr (std::is_same_v<T, double>) {
        row.push_back(a(i, j));
      } else {
        row.push_back(to_string(a(i, j)));
      }
    }
    data.push_back(std::move(row));
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

namespace detail {

template <class T, class Parse>
Matrix<T> matrix_from_json(const Json& j, Parse parse) {
  if (!j.is_object() || !j.contains("data")) throw parse_error("matrix JSON needs a data array");
  const Json& d = j.at("data");
  if (!d.is_array() || d.empty()) throw parse_error("matrix JSON: data must be a nonempty array of rows");
  const std::size_t m = d.size(), n = d.at(0).size();
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != m) throw parse_error("matrix JSON: rows mismatch");
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != n) throw parse_error("matrix JSON: cols mismatch");
  Matrix<T> a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!d.at(i).is_array() || d.at(i).size() != n)
      throw parse_error("matrix JSON: ragged row " + std::to_string(i + 1));
    for (std::size_t c = 0; c < n; ++c) {
      const Json& v = d.at(i).at(c);
      if (v.is_number_integer())
        a(i, c) = T(Rational(Integer(v.dump())));
      else if (v.is_string())
        a(i, c) = parse(v.get<std::string>());
      else
        throw parse_error("matrix JSON: entry (" + std::to_string(i + 1) + ", " + std::to_string(c + 1) +
                          ") must be an integer or a rational string");
    }
  }
  return a;
}

}  // namespace detail

inline ExactMatrix exact_matrix_from_json(const Json& j) {
  return detail::matrix_from_json<Rational>(j, [](const std::string& s) { return parse_rational(s); });
}

inline SurdMatrix surd_matrix_from_json(const Json& j) {
  return detail::matrix_from_json<QSqrt2>(j, [](const std::string& s) { return parse_qsqrt2(s); });
}

/// True when some entry mentions sqrt2.
inline bool json_matrix_has_surds(const Json& j) {
  if (!j.contains("data")) return false;
  for (const auto& row : j.at("data"))
    for (const auto& v : row)
      if (v.is_string() && v.get<std::string>().find("sqrt2") != std::string::npos) return true;
  return false;
}

// --- certificates -----------------------------------------------------------

inline Json to_json(const CertificateReport& r) {
  Json b{{"m", r.bound.m},
         {"epsilonSq", to_string(r.bound.epsilon_sq)},
         {"epsilonUpper", to_string(r.bound.epsilon_upper)},
         {"epsilonUpperApprox", to_double(r.bound.epsilon_upper)}};
  if (r.bound.pert_upper) {
    b["pertUpper"] = to_string(*r.bound.pert_upper);
    b["pertUpperApprox"] = to_double(*r.bound.pert_upper);
  } else {
    b["pertUpper"] = nullptr;
  }
  Json j{{"verdict", r.accepted() ? "Accept" : "Reject"},
         {"delta", to_string(r.delta)},
         {"deltaApprox", to_double(r.delta)},
         {"deltaRow", r.delta_row},
         {"witnessRows", Json::array({r.witness_rows.first, r.witness_rows.second})},
         {"bound", std::move(b)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

inline Json certificate_file(const ExactMatrix& a) {
  Json j = to_json(a);
  j["claim"] = "allows_row_orthogonality";
  j["pattern"] = to_json(sgn_of(a));
  return j;
}

// --- verdicts ---------------------------------------------------------------

inline Json to_json(const FourCycleCover& c) {
  Json cycles = Json::array();
  for (const auto& f : c.cycles)
    cycles.push_back(Json{{"rows", Json::array({f.row_i, f.row_k})}, {"plusCol", f.plus_col}, {"minusCol", f.minus_col}});
  return Json{{"kind", "four-cycle-cover"}, {"cycles", std::move(cycles)}, {"usedColumns", c.used_columns()}};
}

inline Json to_json(const Rank1Obstruction& r) {
  return Json{{"kind", "rank1-obstruction"}, {"rows", r.rows}, {"cols", r.cols}, {"templateRow", r.template_row}};
}

inline Json evidence_to_json(const Evidence& e) {
  struct V {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(const CertificateEvidence& c) const {
      return Json{{"kind", "certificate"}, {"matrix", to_json(c.matrix)}, {"report", to_json(c.report)}};
    }
    Json operator()(const FourCycleCover& c) const { return to_json(c); }
    Json operator()(const Rank1Obstruction& r) const { return to_json(r); }
    Json operator()(const PpoFailure& p) const {
      return Json{{"kind", "ppo-failure"}, {"axis", p.columns ? "columns" : "rows"}, {"pair", Json::array({p.i, p.k})}};
    }
    Json operator()(const StructuralEvidence& s) const { return Json{{"kind", "structural"}, {"name", s.name}}; }
  };
  return std::visit(V{}, e);
}

inline Json to_json(const Verdict& v, const SignPattern& s) {
  return Json{{"pattern", to_json(s)}, {"status", to_string(v.status)}, {"evidence", evidence_to_json(v.evidence)}};
}

template <class T>
Json to_json(const SippVerdict<T>& v) {
  const char* method = v.method == SippMethod::ExactNullspace ? "ExactNullspace"
                       : v.method == SippMethod::FloatRank    ? "FloatRank"
                                                              : "StructuralFastPath";
  Json j{{"hasSipp", v.has_sipp}, {"method", method}};
  if (!v.fast_path.empty()) j["fastPath"] = v.fast_path;
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

// --- reports ----------------------------------------------------------------

inline Json to_json(const SimulationReport& r) {
  Json j{{"m", r.m},
         {"n", r.n},
         {"p", to_string(r.p)},
         {"r", r.r},
         {"trials", r.trials},
         {"seed", r.seed},
         {"successes", r.successes},
         {"empiricalProb", r.empirical},
         {"wilson95", Json::array({r.wilson.lo, r.wilson.hi})},
         {"lowerBound", to_string(r.lower_bound)},
         {"lowerBoundApprox", to_double(r.lower_bound)},
         {"boundApplicable", r.bound_applicable}};
  j["successesExact"] = r.successes_exact ? Json(*r.successes_exact) : Json(nullptr);
  return j;
}

inline Json to_json(const ClassificationRun& run, bool all_classes = false) {
  Json classes = Json::array();
  std::size_t allows = 0, forbidden = 0, unknown = 0;
  for (const auto& c : run.classes) {
    allows += c.status == Status::Allows;
    forbidden += c.status == Status::Forbidden;
    unknown += c.status == Status::Unknown;
    if (!all_classes && !c.minimal) continue;
    Json e{{"pattern", to_json(c.canonical)}, {"status", to_string(c.status)}, {"basis", c.basis}, {"minimal", c.minimal}};
    if (c.verdict) e["evidence"] = evidence_to_json(c.verdict->evidence);
    classes.push_back(std::move(e));
  }
  return Json{{"m", run.m},
              {"nRange", Json::array({run.n_min, run.n_max})},
              {"restricted", run.restricted},
              {"incomplete", run.incomplete},
              {"counts", Json{{"classes", run.classes.size()}, {"allows", allows}, {"forbidden", forbidden},
                              {"unknown", unknown}, {"minimal", run.minimal_classes().size()}}},
              {"classes", std::move(classes)}};
}

}  // namespace orthosign
