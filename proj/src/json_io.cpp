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

#include "brip/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "brip/gf2.hpp"

namespace brip::io {

namespace {

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("matrix file: " + what);
}

}  // namespace

const char* mode_name(kwise::Mode mode) {
  return mode == kwise::Mode::direct ? "direct" : "composed";
}

kwise::Mode mode_from_name(const std::string& name) {
  if (name == "direct") return kwise::Mode::direct;
  if (name == "composed") return kwise::Mode::composed;
  throw std::invalid_argument("unknown generator mode: " + name);
}

const char* source_name(verify::MatrixSource source) {
  switch (source) {
    case verify::MatrixSource::direct: return "direct";
    case verify::MatrixSource::composed: return "composed";
    default: return "independent";
  }
}

verify::MatrixSource source_from_name(const std::string& name) {
  if (name == "direct") return verify::MatrixSource::direct;
  if (name == "composed") return verify::MatrixSource::composed;
  if (name == "independent") return verify::MatrixSource::independent;
  throw std::invalid_argument("unknown matrix source: " + name);
}

json to_json(const kwise::GeneratorSpec& spec) {
  json j;
  j["mode"] = mode_name(spec.mode);
  j["n_bits"] = spec.n_bits;
  j["parity_limit"] = spec.parity_limit;
  j["log2_inv_eps"] = spec.log2_inv_eps;
  j["t"] = spec.t;
  j["m"] = spec.m;
  j["r"] = spec.inner.r;
  j["seed_bits"] = spec.seed_bits;
  return j;
}

kwise::GeneratorSpec generator_spec_from_json(const json& j) {
  kwise::GeneratorSpec spec;
  spec.mode = mode_from_name(j.at("mode").get<std::string>());
  spec.n_bits = j.at("n_bits").get<int>();
  spec.parity_limit = j.at("parity_limit").get<int>();
  spec.log2_inv_eps = j.at("log2_inv_eps").get<int>();
  spec.t = j.at("t").get<int>();
  spec.m = j.at("m").get<int>();
  const int r = j.at("r").get<int>();
  spec.seed_bits = j.at("seed_bits").get<int>();

  require(spec.n_bits >= 1, "n_bits must be >= 1");
  require(spec.seed_bits == 2 * r, "seed_bits must equal 2r");
  if (spec.mode == kwise::Mode::direct) {
    require(spec.t == 0 && spec.m == 0, "direct mode carries no embedding fields");
    spec.inner = smallbias::make_powering_spec_with_degree(spec.n_bits, r);
  } else {
    require(spec.parity_limit >= 2 && spec.parity_limit % 2 == 0,
            "composed mode needs an even parity_limit");
    require(spec.t == kwise::ceil_log2(static_cast<long long>(spec.n_bits) + 1),
            "embedding degree t inconsistent with n_bits");
    require(spec.m == 1 + spec.parity_limit / 2 * spec.t,
            "embedding width m inconsistent with parity_limit and t");
    spec.inner = smallbias::make_powering_spec_with_degree(spec.m, r);
  }
  return spec;
}

json to_json(const smallbias::BiasAuditReport& report) {
  json j;
  j["n_bits"] = report.n_bits;
  j["seed_bits"] = report.seed_bits;
  j["max_parity_size"] = report.max_parity_size;
  j["max_bias_num"] = report.max_bias_num;
  j["max_bias_den"] = report.max_bias_den;
  j["argmax_set"] = report.argmax_set;
  j["bound_num"] = report.bound_num;
  j["bound_den"] = report.bound_den;
  return j;
}

json to_json(const ripmatrix::RipParams& params) {
  json j;
  j["N"] = params.n_cols;
  j["k"] = params.k;
  j["eta"] = params.eta;
  j["Q"] = params.q_rows;
  j["ell"] = params.ell;
  j["log2_inv_eps"] = params.log2_inv_eps;
  j["c_q"] = params.consts.c_q;
  j["c_ell"] = params.consts.c_ell;
  j["c_hw"] = params.consts.c_hw;
  j["c_jl"] = number_or_null(params.consts.c_jl);
  return j;
}

json to_json(const ripmatrix::SparseVector& x) {
  json j;
  j["dim"] = x.dim;
  json support = json::array();
  json values = json::array();
  for (const auto& [idx, val] : x.entries) {
    support.push_back(idx);
    values.push_back(val);
  }
  j["support"] = std::move(support);
  j["values"] = std::move(values);
  return j;
}

json to_json(const verify::RipReport& report) {
  json j;
  j["N"] = report.n_cols;
  j["k"] = report.k;
  j["Q"] = report.q_rows;
  j["delta_k"] = report.delta_k;
  j["argmax_subset"] = report.argmax_subset;
  j["subsets_examined"] = report.subsets_examined;
  j["wall_time_s"] = report.wall_time_s;
  return j;
}

json to_json(const verify::JlReport& report) {
  json j;
  j["N"] = report.n_cols;
  j["k"] = report.k;
  j["eta"] = report.eta;
  j["source"] = source_name(report.source);
  j["x"] = to_json(report.x);
  j["trials_per_q"] = report.trials_per_q;
  j["failure_count"] = report.failure_count;
  j["failure_rate"] = report.failure_rate;
  j["c_hat"] = number_or_null(report.c_hat);
  json sweep = json::array();
  for (const auto& point : report.sweep) {
    json p;
    p["Q"] = point.q_rows;
    p["ell"] = point.ell;
    p["log2_inv_eps"] = point.log2_inv_eps;
    p["trials"] = point.trials;
    p["failures"] = point.failures;
    p["rate"] = point.rate;
    sweep.push_back(std::move(p));
  }
  j["sweep"] = std::move(sweep);
  return j;
}

json to_json(const verify::BudgetReport& report) {
  json j;
  j["params"] = to_json(report.params);
  j["mode"] = mode_name(report.mode);
  j["seed_bits"] = report.seed_bits;
  j["naive_bits"] = report.naive_bits;
  j["ratio"] = number_or_null(report.ratio);
  return j;
}

std::string matrix_to_string(const ripmatrix::RipMatrix& phi) {
  json j;
  j["magic"] = "BRIP1";
  j["N"] = phi.n_cols;
  j["Q"] = phi.q_rows;
  j["scale_denominator_sqrt"] = phi.q_rows;
  j["generator"] = to_json(phi.generator);
  j["seed_hex"] = to_hex(phi.seed.bytes());
  j["signs_base64"] = base64_encode(phi.signs.bits().bytes());
  return j.dump();
}

ripmatrix::RipMatrix matrix_from_string(const std::string& text) {
  const json j = json::parse(text);
  require(j.at("magic").get<std::string>() == "BRIP1", "bad magic");
  ripmatrix::RipMatrix phi;
  phi.n_cols = j.at("N").get<int>();
  phi.q_rows = j.at("Q").get<int>();
  require(phi.n_cols >= 1 && phi.q_rows >= 1, "bad dimensions");
  require(j.at("scale_denominator_sqrt").get<int>() == phi.q_rows,
          "scale denominator must equal Q");
  phi.generator = generator_spec_from_json(j.at("generator"));
  const long long total = static_cast<long long>(phi.q_rows) * phi.n_cols;
  require(phi.generator.n_bits == total, "generator n_bits must equal Q*N");
  phi.seed = BitVector::from_bytes(from_hex(j.at("seed_hex").get<std::string>()),
                                   static_cast<std::size_t>(phi.generator.seed_bits));
  phi.signs = kwise::SignVector(
      BitVector::from_bytes(base64_decode(j.at("signs_base64").get<std::string>()),
                            static_cast<std::size_t>(total)));
  return phi;
}

void write_matrix_file(const std::string& path, const ripmatrix::RipMatrix& phi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << matrix_to_string(phi) << '\n';
}

ripmatrix::RipMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_string(buf.str());
}

}  // namespace brip::io
