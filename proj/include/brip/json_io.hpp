// Copyright 2026 The brip Authors.
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

#ifndef BRIP_JSON_IO_HPP
#define BRIP_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "brip/ripmatrix.hpp"
#include "brip/smallbias.hpp"
#include "brip/verify.hpp"

// JSON is the single source-of-truth format for every report and for the
// matrix files; key order is fixed so identical inputs give identical bytes.

namespace brip::io {

using json = nlohmann::ordered_json;

json to_json(const kwise::GeneratorSpec& spec);
kwise::GeneratorSpec generator_spec_from_json(const json& j);

json to_json(const smallbias::BiasAuditReport& report);
json to_json(const ripmatrix::RipParams& params);
json to_json(const ripmatrix::SparseVector& x);
json to_json(const verify::RipReport& report);
json to_json(const verify::JlReport& report);
json to_json(const verify::BudgetReport& report);

const char* mode_name(kwise::Mode mode);
kwise::Mode mode_from_name(const std::string& name);
const char* source_name(verify::MatrixSource source);
verify::MatrixSource source_from_name(const std::string& name);

/// Matrix file: {"magic":"BRIP1","N","Q","scale_denominator_sqrt","generator",
/// "seed_hex","signs_base64"}; bit-exact round trip.
std::string matrix_to_string(const ripmatrix::RipMatrix& phi);
ripmatrix::RipMatrix matrix_from_string(const std::string& text);

void write_matrix_file(const std::string& path, const ripmatrix::RipMatrix& phi);
ripmatrix::RipMatrix read_matrix_file(const std::string& path);

}  // namespace brip::io

#endif  // BRIP_JSON_IO_HPP
