#pragma once

// JSON and CSV formats for spaces, pairs, hull samples and witnesses, plus
// the built-in demo spaces.

#include <string>
#include <vector>

#include <json.hpp>

#include "qhyper/ample.hpp"
#include "qhyper/coarse.hpp"
#include "qhyper/gh.hpp"
#include "qhyper/hull.hpp"

namespace qhyper::io {

using nlohmann::json;

enum class Format { Json, Csv };

/// A parsed but unvalidated matrix. Empty `labels` means default labels.
struct RawSpace {
  std::vector<std::string> labels;
  Matrix d;

  /// Throws Error(ValidationFailed) unless M1* and M2 hold.
  QSpace build(double tol = kTriangleTol) const;
};

RawSpace parse_raw(const std::string& text, Format format);
RawSpace load_raw(const std::string& path);

/// {"labels": [...], "d": [[...], ...]}. Throws ParseError on malformed
/// text, Error(ValidationFailed) when the matrix is not a
/// pseudo-quasi-metric.
QSpace parse_space(const std::string& text, Format format);
/// Format chosen by extension (.csv -> CSV, anything else JSON). The path
/// "demo:<name>" loads a built-in space.
QSpace load_space(const std::string& path, double tol = kTriangleTol);

json space_to_json(const QSpace& x);
QSpace space_from_json(const json& j);
std::string emit_space(const QSpace& x);

/// Square matrix, comma separated, optional header row of labels.
QSpace parse_csv(const std::string& text);

json pair_to_json(const AmplePair& f);
AmplePair pair_from_json(const json& j);

json hull_to_json(const HullSample& h);

json report_to_json(const AxiomReport& r);

json correspondence_to_json(const Correspondence& r);
Correspondence correspondence_from_json(const json& j);

json witness_to_json(const RoughIsometryWitness& w);

/// A map table: either a bare array [t0, t1, ...] or {"map": [...]}.
std::vector<std::size_t> map_from_json(const json& j);

/// Tolerances used across the library, for reports.
json tolerance_ledger();

std::vector<std::string> demo_names();
/// Throws Error(IndexOutOfRange) for an unknown name.
QSpace demo(const std::string& name);

}  // namespace qhyper::io
