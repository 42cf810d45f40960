// Copyright 2026 The walkcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io.hpp"

#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "walkcover/errors.hpp"

namespace walkcover::cli {

namespace {

LatticePoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw UsageError("a point must be a nonempty array of integers");
  std::vector<Coord> c;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw UsageError("point coordinates must be integers");
    c.push_back(v.get<Coord>());
  }
  return LatticePoint(std::move(c));
}

std::vector<LatticePoint> points_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw UsageError("expected a nonempty array of points");
  std::vector<LatticePoint> out;
  for (const Json& p : j) out.push_back(point_from_json(p));
  return out;
}

}  // namespace

TargetSpec parse_target(const Json& doc) {
  TargetSpec spec;
  if (doc.is_array()) {
    spec.points = points_from_json(doc);
    spec.path = validate_path(spec.points);
  } else if (doc.is_object() && doc.contains("path")) {
    spec.points = points_from_json(doc.at("path"));
    spec.path = validate_path(spec.points);
  } else if (doc.is_object() && doc.contains("set")) {
    spec.points = points_from_json(doc.at("set"));
    for (const LatticePoint& p : spec.points) {
      if (p.dim() != spec.points.front().dim()) throw UsageError("set points differ in dimension");
    }
  } else {
    throw UsageError("target must be an array of points or an object with \"path\" or \"set\"");
  }
  return spec;
}

TargetSpec read_target_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open target file '" + file + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("target file '" + file + "' is not valid JSON: " + e.what());
  }
  return parse_target(doc);
}

CoverTarget make_target(const TargetSpec& spec, CoverMode mode) {
  if (spec.path) return CoverTarget::of_path(*spec.path, mode);
  if (mode == CoverMode::Repetitions) throw UsageError("repetition mode needs a path target");
  return CoverTarget::of_points(spec.points);
}

LatticePoint parse_point(const std::string& text) {
  std::vector<Coord> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("bad coordinate '" + item + "' in point '" + text + "'");
    }
  }
  if (c.empty()) throw UsageError("empty point");
  return LatticePoint(std::move(c));
}

std::vector<LatticePoint> parse_point_list(const std::string& text) {
  std::vector<LatticePoint> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_point(item));
  }
  if (out.empty()) throw UsageError("empty point list");
  return out;
}

Json to_json(const LatticePoint& p) { return Json(std::vector<Coord>(p.coords().begin(), p.coords().end())); }

Json to_json(const std::vector<LatticePoint>& points) {
  Json out = Json::array();
  for (const LatticePoint& p : points) out.push_back(to_json(p));
  return out;
}

Json to_json(const Path& path) { return to_json(path.points()); }

std::string to_decimal(const BigInt& v) { return v.str(); }

Json to_json(const ExactResult& r) {
  const Rational p = r.probability();
  return Json{{"favorable", to_decimal(r.favorable)},
              {"total", to_decimal(r.total)},
              {"probability_num", to_decimal(boost::multiprecision::numerator(p))},
              {"probability_den", to_decimal(boost::multiprecision::denominator(p))},
              {"probability", r.approx()}};
}

Json to_json(const Estimate& e) {
  return Json{{"successes", e.successes}, {"n", e.n},           {"p_hat", e.p_hat},
              {"std_error", e.std_error}, {"ci_low", e.ci_low}, {"ci_high", e.ci_high}};
}

Json to_json(const GreenValue& g) {
  return Json{{"value", g.value}, {"abs_error_bound", g.abs_error_bound}, {"method", to_string(g.method)}};
}

Json to_json(const BoundedValue& b) { return Json{{"value", b.value}, {"abs_error_bound", b.abs_error_bound}}; }

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json RunRecord::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["started"] = iso8601(started);
  j["finished"] = iso8601(finished);
  j["results"] = results;
  j["tool_version"] = tool_version;
  return j;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n\r") == std::string::npos) {
      out_ << c;
      continue;
    }
    out_ << '"';
    for (char ch : c) {
      if (ch == '"') out_ << '"';
      out_ << ch;
    }
    out_ << '"';
  }
  out_ << "\r\n";
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

}  // namespace walkcover::cli
