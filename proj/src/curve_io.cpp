// Copyright 2026 The tfqkd Authors
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

#include "curve_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tfqkd {

namespace {

using OrderedJson = nlohmann::ordered_json;

struct Field {
  const char* name;
  double CurvePoint::* member;
};

constexpr Field kFields[] = {
    {"distance_km", &CurvePoint::distance_km},
    {"total_loss_db", &CurvePoint::total_loss_db},
    {"rate_p1_oneway", &CurvePoint::rate_p1_oneway},
    {"rate_p1_k1", &CurvePoint::rate_p1_k1},
    {"rate_p1_k2", &CurvePoint::rate_p1_k2},
    {"rate_p2", &CurvePoint::rate_p2},
    {"plob", &CurvePoint::plob},
    {"mu_opt_p1", &CurvePoint::mu_opt_p1},
    {"mu_opt_p2", &CurvePoint::mu_opt_p2},
};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string curve_to_csv(const std::vector<CurvePoint>& rows) {
  std::string out(kCurveCsvHeader);
  out += '\n';
  for (const CurvePoint& row : rows) {
    bool first = true;
    for (const Field& f : kFields) {
      if (!first) out += ',';
      first = false;
      const double v = row.*(f.member);
      if (!std::isnan(v)) out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const std::vector<CurvePoint>& rows) {
  OrderedJson arr = OrderedJson::array();
  for (const CurvePoint& row : rows) {
    OrderedJson obj = OrderedJson::object();
    for (const Field& f : kFields) {
      const double v = row.*(f.member);
      if (std::isnan(v)) continue;  // protocol not selected
      if (std::isinf(v)) {
        obj[f.name] = nullptr;  // unbounded repeaterless value at zero loss
      } else {
        obj[f.name] = v;
      }
    }
    if (!row.error.empty()) obj["error"] = row.error;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<CurvePoint> curve_from_json(const std::string& text) {
  OrderedJson arr;
  try {
    arr = OrderedJson::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid curve JSON: ") + e.what());
  }
  if (!arr.is_array()) throw IoError("curve JSON must be an array of rows");
  std::vector<CurvePoint> rows;
  rows.reserve(arr.size());
  for (const auto& obj : arr) {
    CurvePoint row;
    for (const Field& f : kFields) {
      const auto it = obj.find(f.name);
      if (it == obj.end()) continue;
      row.*(f.member) = it->is_null() ? std::numeric_limits<double>::infinity()
                                      : it->get<double>();
    }
    if (const auto it = obj.find("error"); it != obj.end()) {
      row.error = it->get<std::string>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tfqkd
