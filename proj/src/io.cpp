#include "qhyper/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qhyper::io {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size() && errno != ERANGE;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

RawSpace parse_csv_raw(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::istringstream is(text);
  std::string line;
  for (std::size_t row = 1; std::getline(is, line); ++row)
    if (!trim(line).empty()) lines.emplace_back(row, line);
  if (lines.empty()) throw ParseError("empty CSV input");

  std::vector<std::string> labels;
  std::size_t first = 0;
  {
    const auto cells = split_cells(lines[0].second);
    double dummy = 0.0;
    bool numeric = true;
    for (const auto& c : cells) numeric = numeric && parse_number(c, dummy);
    if (!numeric) {
      labels = cells;
      first = 1;
    }
  }
  const std::size_t n = lines.size() - first;
  if (n == 0) throw ParseError("CSV has a header but no rows", lines[0].first);
  if (!labels.empty() && labels.size() != n)
    throw ParseError("header has " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(n) + " rows",
                     lines[0].first);

  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [row, raw] = lines[first + i];
    const auto cells = split_cells(raw);
    if (cells.size() != n)
      throw ParseError("expected " + std::to_string(n) + " values, found " +
                           std::to_string(cells.size()),
                       row);
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      if (!parse_number(cells[j], v)) throw ParseError("not a number: '" + cells[j] + "'", row, j + 1);
      d(i, j) = v;
    }
  }
  return RawSpace{std::move(labels), std::move(d)};
}

RawSpace space_from_json_raw(const json& j) {
  if (!j.is_object() || !j.contains("d")) throw ParseError("space JSON needs a \"d\" matrix");
  const json& rows = j.at("d");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"d\" must be a non-empty array");
  const std::size_t n = rows.size();
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("row " + std::to_string(i + 1) + " of \"d\" is ragged", i + 1);
    for (std::size_t k = 0; k < n; ++k) {
      if (!rows[i][k].is_number()) throw ParseError("non-numeric entry", i + 1, k + 1);
      d(i, k) = rows[i][k].get<double>();
    }
  }
  if (!j.contains("labels")) return RawSpace{{}, std::move(d)};
  const json& lj = j.at("labels");
  if (!lj.is_array() || lj.size() != n) throw ParseError("\"labels\" must list one label per row");
  std::vector<std::string> labels;
  for (const auto& l : lj) {
    if (!l.is_string()) throw ParseError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return RawSpace{std::move(labels), std::move(d)};
}

QSpace RawSpace::build(double tol) const {
  if (labels.empty()) return QSpace(d, tol);
  return QSpace(labels, d, tol);
}

QSpace parse_csv(const std::string& text) { return parse_csv_raw(text).build(); }

QSpace space_from_json(const json& j) { return space_from_json_raw(j).build(); }

RawSpace parse_raw(const std::string& text, Format format) {
  if (format == Format::Csv) return parse_csv_raw(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON near byte ") + std::to_string(e.byte));
  }
  return space_from_json_raw(j);
}

QSpace parse_space(const std::string& text, Format format) { return parse_raw(text, format).build(); }

RawSpace load_raw(const std::string& path) {
  if (path.rfind("demo:", 0) == 0) {
    const QSpace x = demo(path.substr(5));
    return RawSpace{x.labels(), x.matrix()};
  }
  return parse_raw(read_file(path), ends_with(path, ".csv") ? Format::Csv : Format::Json);
}

QSpace load_space(const std::string& path, double tol) { return load_raw(path).build(tol); }

json space_to_json(const QSpace& x) {
  return json{{"labels", x.labels()}, {"d", x.matrix().rows()}};
}

std::string emit_space(const QSpace& x) { return space_to_json(x).dump(); }

json pair_to_json(const AmplePair& f) {
  json j{{"f1", f.f1}, {"f2", f.f2}, {"certified_minimal", f.certified_minimal}};
  if (f.certified_minimal) j["tolerance"] = kCertifyTol;
  return j;
}

AmplePair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("f1") || !j.contains("f2"))
    throw ParseError("ample pair JSON needs \"f1\" and \"f2\"");
  AmplePair f;
  try {
    f.f1 = j.at("f1").get<std::vector<double>>();
    f.f2 = j.at("f2").get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ParseError("\"f1\" and \"f2\" must be arrays of numbers");
  }
  return f;
}

json hull_to_json(const HullSample& h) {
  json points = json::array();
  for (const auto& p : h.points) points.push_back(pair_to_json(p));
  return json{{"seed", h.seed}, {"points", points}, {"embedded", h.embedded}, {"spread", h.spread}};
}

json report_to_json(const AxiomReport& r) {
  json v = json::array();
  for (const auto& viol : r.violations)
    v.push_back({{"axiom", to_string(viol.axiom)}, {"witness", viol.witness}, {"magnitude", viol.magnitude}});
  return json{{"satisfies_M1", r.satisfies_M1},
              {"satisfies_M1star", r.satisfies_M1star},
              {"satisfies_M2", r.satisfies_M2},
              {"satisfies_M3", r.satisfies_M3},
              {"is_metric", r.is_metric},
              {"is_quasi_metric", r.is_quasi_metric()},
              {"is_pseudo_quasi_metric", r.is_pseudo_quasi_metric()},
              {"triangle_tol", r.triangle_tol},
              {"violation_count", r.violation_count},
              {"violations", v}};
}

json correspondence_to_json(const Correspondence& r) {
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({a, b});
  return json{{"left_size", r.left_size}, {"right_size", r.right_size}, {"pairs", pairs}};
}

Correspondence correspondence_from_json(const json& j) {
  Correspondence r;
  try {
    r.left_size = j.at("left_size").get<std::size_t>();
    r.right_size = j.at("right_size").get<std::size_t>();
    for (const auto& p : j.at("pairs"))
      r.pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad correspondence JSON: ") + e.what());
  }
  return r;
}

json witness_to_json(const RoughIsometryWitness& w) {
  return json{{"map", w.map}, {"eps_embed", w.eps_embed}, {"eps_large", w.eps_large}, {"eps", w.eps}};
}

std::vector<std::size_t> map_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("map") ? j.at("map") : j;
  if (!arr.is_array()) throw ParseError("map must be an array of point indices");
  std::vector<std::size_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ParseError("map entries must be non-negative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

json tolerance_ledger() {
  return json{{"triangle_tol", kTriangleTol},
              {"ample_tol", kAmpleTol},
              {"projection_tol", kProjectionTol},
              {"certification_tol", kCertifyTol},
              {"dedup_tol", kDedupTol},
              {"bisection_tol", kBisectionTol},
              {"nonexpansive_tol", kNonexpansiveTol},
              {"max_iter", kDefaultMaxIter}};
}

std::vector<std::string> demo_names() { return {"sierpinski", "line3", "metric2", "runit5"}; }

namespace {

QSpace u_on(const std::vector<double>& pts, const std::vector<std::string>& labels) {
  Matrix d(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) d(i, j) = std::max(0.0, pts[i] - pts[j]);
  return QSpace(labels, std::move(d));
}

}  // namespace

QSpace demo(const std::string& name) {
  if (name == "sierpinski") return u_on({0.0, 1.0}, {"0", "1"});
  if (name == "line3") return u_on({0.0, 1.0, 2.0}, {"0", "1", "2"});
  if (name == "metric2") return QSpace({"a", "b"}, Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  if (name == "runit5")
    return u_on({0.0, 0.25, 0.5, 0.75, 1.0}, {"0", "0.25", "0.5", "0.75", "1"});
  throw Error(ErrorCode::IndexOutOfRange, "unknown demo '" + name + "'");
}

}  // namespace qhyper::io
