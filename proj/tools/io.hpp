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

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "walkcover/exact.hpp"
#include "walkcover/green.hpp"
#include "walkcover/lattice.hpp"
#include "walkcover/montecarlo.hpp"

namespace walkcover::cli {

using Json = nlohmann::ordered_json;

// Input or usage problem; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A target file is either a JSON array of points (a path), an object
// {"path": [...]} or an object {"set": [...]}; points are integer arrays.
struct TargetSpec {
  std::optional<Path> path;
  std::vector<LatticePoint> points;  // the path's points or the set
};

TargetSpec parse_target(const Json& doc);
TargetSpec read_target_file(const std::string& file);
CoverTarget make_target(const TargetSpec& spec, CoverMode mode);

// "1,0,0" -> (1,0,0); "1,0,0;0,1,0" -> two points.
LatticePoint parse_point(const std::string& text);
std::vector<LatticePoint> parse_point_list(const std::string& text);

Json to_json(const LatticePoint& p);
Json to_json(const std::vector<LatticePoint>& points);
Json to_json(const Path& path);
Json to_json(const ExactResult& r);
Json to_json(const Estimate& e);
Json to_json(const GreenValue& g);
Json to_json(const BoundedValue& b);

std::string to_decimal(const BigInt& v);

// Provenance of one invocation, written next to the output on --record.
struct RunRecord {
  std::string command;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  Json results;
  std::string tool_version;

  Json to_json() const;
};

std::string iso8601(std::chrono::system_clock::time_point t);

// RFC 4180 quoting.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

// Writes text to `path`, or to `fallback` when path is empty.
void write_text(const std::string& path, const std::string& text, std::ostream& fallback);

}  // namespace walkcover::cli
