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

#ifndef TFQKD_CURVE_IO_HPP
#define TFQKD_CURVE_IO_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "optimize.hpp"

namespace tfqkd {

/// Stable CSV column order; also the JSON field order.
inline constexpr const char* kCurveCsvHeader =
    "distance_km,total_loss_db,rate_p1_oneway,rate_p1_k1,rate_p1_k2,rate_p2,plob,"
    "mu_opt_p1,mu_opt_p2";

/// Locale-independent formatting with 12 significant digits.
std::string format_double(double v);

/// CSV with the header above; unselected protocols leave their cells empty,
/// an unbounded repeaterless value prints as inf.
std::string curve_to_csv(const std::vector<CurvePoint>& rows);

/// JSON array of row objects in header order. Fields of unselected
/// protocols are omitted; an infinite bound serializes as null (the only
/// non-finite value a sweep can produce). Numbers round-trip exactly.
std::string curve_to_json(const std::vector<CurvePoint>& rows);
std::vector<CurvePoint> curve_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace tfqkd

#endif  // TFQKD_CURVE_IO_HPP
