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

#include "brip/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "brip/common.hpp"
#include "brip/json_io.hpp"
#include "brip/moments.hpp"
#include "brip/rng.hpp"

namespace brip::cli {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalidArgs = 2;
constexpr int kExitCapacity = 3;

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonOpts {
  std::string output = "-";
  std::string format = "json";
  int threads = 0;
};

struct SeedOpts {
  std::string master_seed_hex;
  bool entropy = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("-o,--output", opts->output, "output path ('-' for stdout)");
  cmd->add_option("--format", opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", opts->threads,
                  "worker cap (fallback: BIASED_RIP_THREADS, then hardware)");
}

void add_seed(CLI::App* cmd, SeedOpts* opts) {
  cmd->add_option("--master-seed", opts->master_seed_hex, "hex seed string");
  cmd->add_flag("--entropy", opts->entropy,
                "draw the master seed from the platform source and print it");
}

void apply_threads(const CommonOpts& opts) {
  if (opts.threads > 0) {
    set_max_threads(opts.threads);
    return;
  }
  if (const char* env = std::getenv("BIASED_RIP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) set_max_threads(v);
  }
}

std::vector<std::uint8_t> entropy_bytes(std::size_t count) {
  std::random_device device;
  std::vector<std::uint8_t> bytes(count);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(device() & 0xFF);
  return bytes;
}

/// Resolves exactly `bits` seed bits from --master-seed / --entropy.
/// The hex must supply exactly ceil(bits/8) bytes with zero pad bits.
BitVector resolve_seed_bits(SeedOpts& opts, int bits, std::ostream& err) {
  const std::size_t need_bytes = (static_cast<std::size_t>(bits) + 7) / 8;
  std::vector<std::uint8_t> bytes;
  if (opts.entropy) {
    if (!opts.master_seed_hex.empty()) {
      throw std::invalid_argument("--master-seed and --entropy are mutually exclusive");
    }
    bytes = entropy_bytes(need_bytes);
    if (bits % 8 != 0) {
      bytes.back() &= static_cast<std::uint8_t>((1u << (bits % 8)) - 1);
    }
    opts.master_seed_hex = to_hex(bytes);
    err << "entropy: drew master seed " << opts.master_seed_hex << "\n";
  } else {
    if (opts.master_seed_hex.empty()) {
      throw std::invalid_argument(
          "no --master-seed given (required: " + std::to_string(bits) +
          " seed bits = " + std::to_string(need_bytes) +
          " hex-encoded bytes); pass --entropy to draw one");
    }
    bytes = from_hex(opts.master_seed_hex);
  }
  if (bytes.size() != need_bytes) {
    throw std::invalid_argument(
        "master seed supplies " + std::to_string(bytes.size() * 8) + " bits but exactly " +
        std::to_string(bits) + " seed_bits are required (" + std::to_string(need_bytes) +
        " bytes; insufficient and excess bits are both rejected)");
  }
  try {
    return BitVector::from_bytes(bytes, static_cast<std::size_t>(bits));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("master seed has nonzero bits beyond the required " +
                                std::to_string(bits) + " seed_bits");
  }
}

/// Experiment commands consume a 64-bit master key (8 hex bytes).
std::uint64_t resolve_seed_key(SeedOpts& opts, std::ostream& err) {
  const BitVector bits = resolve_seed_bits(opts, 64, err);
  return bits.low_u64();
}

// ---------------------------------------------------------------------------
// Output

void flatten_json(const json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>* cells) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, cells);
    }
  } else if (j.is_string()) {
    cells->emplace_back(prefix, j.get<std::string>());
  } else {
    cells->emplace_back(prefix, j.dump());  // numbers, bools, null, arrays
  }
}

std::string render_csv(const json& j) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten_json(j, "", &cells);
  std::ostringstream head;
  std::ostringstream row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      head << ',';
      row << ',';
    }
    head << cells[i].first;
    std::string value = cells[i].second;
    if (value.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
      }
      quoted += '"';
      value = quoted;
    }
    row << value;
  }
  return head.str() + "\n" + row.str() + "\n";
}

void emit_report(const CommonOpts& opts, const json& config, const json& report,
                 std::ostream& out) {
  json envelope;
  envelope["version"] = kVersion;
  envelope["config"] = config;
  envelope["report"] = report;
  const std::string text =
      opts.format == "csv" ? render_csv(envelope) : envelope.dump(2) + "\n";
  if (opts.output == "-") {
    out << text;
  } else {
    std::ofstream file(opts.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + opts.output);
    file << text;
  }
}

// ---------------------------------------------------------------------------
// Deterministic random instances for the experiment drivers

Eigen::MatrixXd random_symmetric(int n, rng::Counter& stream) {
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double g = stream.next_normal();
      b(i, j) = g;
      b(j, i) = g;
    }
  }
  return b;
}

ripmatrix::SparseVector random_unit_sparse(int dim, int k, rng::Counter& stream) {
  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(support.size()) < k) {
    const int idx = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(dim)));
    bool fresh = true;
    for (int s : support) fresh = fresh && s != idx;
    if (fresh) support.push_back(idx);
  }
  std::sort(support.begin(), support.end());
  std::vector<std::pair<int, double>> entries;
  entries.reserve(support.size());
  double norm_sq = 0.0;
  for (int idx : support) {
    const double v = stream.next_normal();
    entries.emplace_back(idx, v);
    norm_sq += v * v;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& [idx, v] : entries) v *= inv;
  return ripmatrix::SparseVector::make(dim, std::move(entries));
}

// ---------------------------------------------------------------------------
// Subcommand state

struct SampleCmd {
  CommonOpts common;
  SeedOpts seed;
  int n_cols = 0;
  int k = 1;
  double eta = 0.5;
  int q_override = -1;   // -1 = derive from (N, k, eta)
  int ell_override = -1;
  std::string mode = "composed";
  ripmatrix::Constants consts;
};

struct AuditCmd {
  CommonOpts common;
  int n_bits = 0;
  int max_parity = 0;  // 0 = all sizes
  std::string generator = "powering";
  int degree = -1;     // -1 = derive from log2_inv_eps
  int log2_inv_eps = 3;
  int parity_limit = 4;
};

struct HwCmd {
  CommonOpts common;
  SeedOpts seed;
  int n = 8;
  int ell = 2;
  std::string dist = "uniform";
  std::string method = "exact";
  std::string generator = "powering";
  int degree = -1;  // -1 = derive from log2_inv_eps
  int log2_inv_eps = 3;
  int parity_limit = 4;
  long long trials = 1000;
  double c_hw = 8.0;
};

struct RipExactCmd {
  CommonOpts common;
  std::string input;
  int k = 2;
  std::string subset_csv;
};

struct JlCmd {
  CommonOpts common;
  SeedOpts seed;
  int n_cols = 64;
  int k = 4;
  double eta = 0.5;
  std::string q_sweep = "16,32,64,128";
  long long trials = 2000;
  std::string source = "composed";
  ripmatrix::Constants consts;
};

struct RecoverCmd {
  CommonOpts common;
  SeedOpts seed;
  int n_cols = 256;
  int k = 4;
  double eta = 0.5;
  int q_cap = -1;  // -1 = uncapped
  long long trials = 50;
  std::string mode = "composed";
  double min_success = -1.0;  // < 0 = report only
  ripmatrix::Constants consts;
};

struct BudgetCmd {
  CommonOpts common;
  int n_cols = 0;
  int k = 0;
  double eta = 0.5;
  int q_override = -1;
  int ell_override = -1;
  std::string mode = "composed";
  ripmatrix::Constants consts;
};

void add_constants(CLI::App* cmd, ripmatrix::Constants* consts) {
  cmd->add_option("--c-q", consts->c_q, "row-count multiplier");
  cmd->add_option("--c-ell", consts->c_ell, "moment-order multiplier");
  cmd->add_option("--c-hw", consts->c_hw, "asserted moment-bound constant");
}

ripmatrix::Overrides make_overrides(int q, int ell, const ripmatrix::Constants& consts) {
  ripmatrix::Overrides ov;
  if (q > 0) ov.q_rows = q;
  if (ell > 0) ov.ell = ell;
  ov.consts = consts;
  return ov;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated integer list");
  return out;
}

// Exact comparison num1/den1 > num2/den2 over non-negative dyadics.
bool rational_greater(std::uint64_t num1, std::uint64_t den1, std::uint64_t num2,
                      std::uint64_t den2) {
  return static_cast<unsigned __int128>(num1) * den2 >
         static_cast<unsigned __int128>(num2) * den1;
}

// ---------------------------------------------------------------------------
// Command bodies (return exit codes)

int cmd_sample(SampleCmd& c, std::ostream& out, std::ostream& err) {
  apply_threads(c.common);
  const auto params = ripmatrix::choose_params(
      c.n_cols, c.k, c.eta, make_overrides(c.q_override, c.ell_override, c.consts));
  const auto mode = io::mode_from_name(c.mode);
  const long long qn = static_cast<long long>(params.q_rows) * params.n_cols;
  if (qn > INT32_MAX) throw capacity_error("sample: Q*N too large to materialize");
  const auto spec =
      kwise::make_spec(mode, static_cast<int>(qn), 2 * params.ell, params.log2_inv_eps);
  const BitVector seed = resolve_seed_bits(c.seed, spec.seed_bits, err);
  const auto phi = ripmatrix::sample_matrix(params, mode, seed);

  const std::string text = io::matrix_to_string(phi) + "\n";
  if (c.common.output == "-") {
    out << text;
  } else {
    std::ofstream file(c.common.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + c.common.output);
    file << text;
  }
  return kExitOk;
}

int cmd_audit(AuditCmd& c, std::ostream& out, std::ostream& err) {
  apply_threads(c.common);
  smallbias::BitGeneratorView view;
  json config;
  config["subcommand"] = "audit-bias";
  config["n_bits"] = c.n_bits;
  config["generator"] = c.generator;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;

  if (c.generator == "powering") {
    smallbias::PoweringSpec spec =
        c.degree > 0 ? smallbias::make_powering_spec_with_degree(c.n_bits, c.degree)
                     : smallbias::make_powering_spec(c.n_bits, c.log2_inv_eps);
    view = smallbias::view(spec);
    config["r"] = spec.r;
  } else if (c.generator == "composed") {
    const auto spec =
        kwise::make_spec(kwise::Mode::composed, c.n_bits, c.parity_limit, c.log2_inv_eps);
    view = kwise::Generator(spec).bit_view();
    config["spec"] = io::to_json(spec);
  } else {  // uniform
    view = smallbias::uniform_stub(c.n_bits);
  }

  int max_parity = c.max_parity > 0 ? c.max_parity : c.n_bits;
  if (c.generator == "composed" && c.max_parity == 0) {
    max_parity = std::min(c.n_bits, c.parity_limit);
  }
  config["max_parity"] = max_parity;

  const auto report = smallbias::audit_bias_exhaustive(view, max_parity);
  emit_report(c.common, config, io::to_json(report), out);

  if (rational_greater(report.max_bias_num, report.max_bias_den, report.bound_num,
                       report.bound_den)) {
    err << "audit-bias: FAIL max bias " << report.max_bias_num << "/" << report.max_bias_den
        << " exceeds bound " << report.bound_num << "/" << report.bound_den << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_hw(HwCmd& c, std::ostream& out, std::ostream& err) {
  apply_threads(c.common);
  const std::uint64_t master = resolve_seed_key(c.seed, err);
  rng::Counter b_stream(rng::derive_key(master, 0));
  const moments::SymmetricMatrix b(random_symmetric(c.n, b_stream));

  json config;
  config["subcommand"] = "hw-moments";
  config["n"] = c.n;
  config["ell"] = c.ell;
  config["dist"] = c.dist;
  config["method"] = c.method;
  config["master_seed"] = c.seed.master_seed_hex;
  config["c_hw"] = c.c_hw;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;

  std::optional<smallbias::BitGeneratorView> gen;
  std::optional<int> log2_inv_eps;
  if (c.dist == "biased") {
    if (c.generator == "powering") {
      const auto spec = c.degree > 0
                            ? smallbias::make_powering_spec_with_degree(c.n, c.degree)
                            : smallbias::make_powering_spec(c.n, c.log2_inv_eps);
      gen = smallbias::view(spec);
      config["r"] = spec.r;
      // Guarantee exponent of the powering space: n/2^r <= 2^-(r - ceil_log2 n).
      log2_inv_eps = spec.r - kwise::ceil_log2(spec.n_bits);
    } else {
      const auto spec =
          kwise::make_spec(kwise::Mode::composed, c.n, c.parity_limit, c.log2_inv_eps);
      gen = kwise::Generator(spec).bit_view();
      config["spec"] = io::to_json(spec);
      log2_inv_eps = c.log2_inv_eps;
    }
  }

  double moment = 0.0;
  double ci_half_width = std::numeric_limits<double>::quiet_NaN();
  long long count = 0;
  std::string mode_label;
  if (c.method == "exact") {
    if (c.dist == "uniform") {
      moment = moments::exact_moment_uniform(b, c.ell);
      count = 1ll << c.n;
      mode_label = "exact-cube";
    } else {
      moment = moments::exact_moment_space(b, c.ell, *gen);
      count = 1ll << gen->seed_bits;
      mode_label = "exact-space";
    }
  } else {
    const auto view = c.dist == "uniform" ? smallbias::uniform_stub(c.n) : *gen;
    const auto mc = moments::mc_moment(b, c.ell, view, c.trials, rng::derive_key(master, 1));
    moment = mc.value;
    ci_half_width = mc.half_width_95;
    count = mc.trials;
    mode_label = "monte-carlo";
  }

  const double hw = moments::hw_bound(b, c.ell, c.c_hw);
  double hwb = std::numeric_limits<double>::quiet_NaN();
  if (log2_inv_eps.has_value()) {
    hwb = moments::hwb_bound(b, c.ell, c.c_hw, *log2_inv_eps);
  }
  const double c_min = moments::min_constant(b, c.ell, std::max(moment, 0.0));

  json report;
  report["n"] = c.n;
  report["ell"] = c.ell;
  report["moment"] = moment;
  report["hw_bound"] = hw;
  report["hwb_bound"] = std::isnan(hwb) ? json(nullptr) : json(hwb);
  report["constants"] = json{{"c_hw", c.c_hw},
                             {"log2_inv_eps", log2_inv_eps.has_value()
                                                  ? json(*log2_inv_eps)
                                                  : json(nullptr)}};
  report["count"] = count;
  report["mode"] = mode_label;
  report["ci_half_width"] = std::isnan(ci_half_width) ? json(nullptr) : json(ci_half_width);
  report["c_min_empirical"] = c_min;
  emit_report(c.common, config, report, out);

  const double bound = log2_inv_eps.has_value() ? hwb : hw;
  if (moment > bound) {
    err << "hw-moments: FAIL moment " << moment << " exceeds bound " << bound << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_rip_exact(RipExactCmd& c, std::ostream& out, std::ostream& /*err*/) {
  apply_threads(c.common);
  const auto phi = io::read_matrix_file(c.input);
  const bool collect = !c.subset_csv.empty();
  const auto report = verify::rip_constant_exact(phi, c.k, collect);

  if (collect) {
    std::ofstream csv(c.subset_csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open for writing: " + c.subset_csv);
    csv << "rank,subset,delta\n";
    std::vector<int> subset = verify::unrank_combination(report.n_cols, c.k, 0);
    for (long long rank = 0; rank < report.subsets_examined; ++rank) {
      csv << rank << ",\"";
      for (std::size_t j = 0; j < subset.size(); ++j) {
        if (j > 0) csv << ' ';
        csv << subset[j];
      }
      csv << "\"," << report.per_subset[static_cast<std::size_t>(rank)] << "\n";
      verify::next_combination(subset, report.n_cols);
    }
  }

  json config;
  config["subcommand"] = "rip-exact";
  config["input"] = c.input;
  config["k"] = c.k;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;
  emit_report(c.common, config, io::to_json(report), out);
  return kExitOk;
}

int cmd_jl(JlCmd& c, std::ostream& out, std::ostream& err) {
  apply_threads(c.common);
  const std::uint64_t master = resolve_seed_key(c.seed, err);
  const std::vector<int> sweep = parse_int_list(c.q_sweep);

  ripmatrix::Overrides ov;
  ov.q_rows = sweep.front();
  ov.consts = c.consts;
  const auto params = ripmatrix::choose_params(c.n_cols, c.k, c.eta, ov);

  rng::Counter x_stream(rng::derive_key(master, 0));
  const auto x = random_unit_sparse(c.n_cols, c.k, x_stream);
  const auto report = verify::jl_tail(params, io::source_from_name(c.source), x, c.eta,
                                      c.trials, rng::derive_key(master, 1), sweep);

  json config;
  config["subcommand"] = "jl-tail";
  config["N"] = c.n_cols;
  config["k"] = c.k;
  config["eta"] = c.eta;
  config["q_sweep"] = sweep;
  config["trials"] = c.trials;
  config["source"] = c.source;
  config["master_seed"] = c.seed.master_seed_hex;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;
  emit_report(c.common, config, io::to_json(report), out);
  return kExitOk;
}

int cmd_recover(RecoverCmd& c, std::ostream& out, std::ostream& err) {
  apply_threads(c.common);
  const std::uint64_t master = resolve_seed_key(c.seed, err);

  ripmatrix::Overrides ov;
  ov.consts = c.consts;
  auto params = ripmatrix::choose_params(c.n_cols, c.k, c.eta, ov);
  if (c.q_cap > 0 && params.q_rows > c.q_cap) {
    ov.q_rows = c.q_cap;
    params = ripmatrix::choose_params(c.n_cols, c.k, c.eta, ov);
  }

  const auto mode = io::mode_from_name(c.mode);
  const long long qn = static_cast<long long>(params.q_rows) * params.n_cols;
  if (qn > INT32_MAX) throw capacity_error("recover-demo: Q*N too large");
  const kwise::Generator gen(
      kwise::make_spec(mode, static_cast<int>(qn), 2 * params.ell, params.log2_inv_eps));

  long long successes = 0;
  double worst_coeff_error = 0.0;
  for (long long trial = 0; trial < c.trials; ++trial) {
    rng::Counter phi_stream(rng::derive_key(master, 2 * static_cast<std::uint64_t>(trial)));
    rng::Counter x_stream(rng::derive_key(master, 2 * static_cast<std::uint64_t>(trial) + 1));
    ripmatrix::RipMatrix phi;
    phi.q_rows = params.q_rows;
    phi.n_cols = params.n_cols;
    phi.generator = gen.spec();
    phi.seed = phi_stream.next_bits(static_cast<std::size_t>(gen.spec().seed_bits));
    phi.signs = gen.generate(phi.seed);

    const auto x = random_unit_sparse(c.n_cols, c.k, x_stream);
    const Eigen::VectorXd y = ripmatrix::apply(phi, x);
    try {
      const auto recovered = verify::omp_recover(phi, y, c.k);
      bool same_support = recovered.entries.size() == x.entries.size();
      double coeff_error = 0.0;
      if (same_support) {
        for (std::size_t j = 0; j < x.entries.size(); ++j) {
          same_support = same_support && recovered.entries[j].first == x.entries[j].first;
          if (same_support) {
            coeff_error = std::max(
                coeff_error, std::abs(recovered.entries[j].second - x.entries[j].second));
          }
        }
      }
      if (same_support) {
        ++successes;
        worst_coeff_error = std::max(worst_coeff_error, coeff_error);
      }
    } catch (const degenerate_support_error&) {
      // counted as a failed trial
    }
  }

  const double rate = static_cast<double>(successes) / static_cast<double>(c.trials);
  json config;
  config["subcommand"] = "recover-demo";
  config["N"] = c.n_cols;
  config["k"] = c.k;
  config["eta"] = c.eta;
  config["Q"] = params.q_rows;
  config["ell"] = params.ell;
  config["mode"] = c.mode;
  config["trials"] = c.trials;
  config["master_seed"] = c.seed.master_seed_hex;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;

  json report;
  report["params"] = io::to_json(params);
  report["trials"] = c.trials;
  report["exact_support_recoveries"] = successes;
  report["success_rate"] = rate;
  report["worst_recovered_coeff_error"] = worst_coeff_error;
  emit_report(c.common, config, report, out);

  if (c.min_success >= 0.0 && rate < c.min_success) {
    err << "recover-demo: FAIL success rate " << rate << " below required " << c.min_success
        << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_budget(BudgetCmd& c, std::ostream& out, std::ostream& /*err*/) {
  apply_threads(c.common);
  const auto params = ripmatrix::choose_params(
      c.n_cols, c.k, c.eta, make_overrides(c.q_override, c.ell_override, c.consts));
  const auto report = verify::randomness_budget(params, io::mode_from_name(c.mode));

  json config;
  config["subcommand"] = "budget";
  config["N"] = c.n_cols;
  config["k"] = c.k;
  config["eta"] = c.eta;
  config["mode"] = c.mode;
  config["threads"] = max_threads();
  config["output"] = c.common.output;
  config["format"] = c.common.format;
  emit_report(c.common, config, io::to_json(report), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sign RIP matrices from short seeds, with desk-scale verifiers"};
  app.require_subcommand(1);

  SampleCmd sample;
  auto* sample_cmd = app.add_subcommand("sample", "sample a sign matrix and write its file");
  sample_cmd->add_option("-N,--cols", sample.n_cols, "columns")->required();
  sample_cmd->add_option("-k,--sparsity", sample.k, "target sparsity (default 1)");
  sample_cmd->add_option("--eta", sample.eta, "distortion in (0,1), default 0.5");
  sample_cmd->add_option("-Q,--rows", sample.q_override, "row override");
  sample_cmd->add_option("--ell", sample.ell_override, "moment-order override (power of 2)");
  sample_cmd->add_option("--mode", sample.mode, "direct or composed (default composed)")
      ->check(CLI::IsMember({"direct", "composed"}));
  add_constants(sample_cmd, &sample.consts);
  add_common(sample_cmd, &sample.common);
  add_seed(sample_cmd, &sample.seed);

  AuditCmd audit;
  auto* audit_cmd = app.add_subcommand("audit-bias", "exhaustive exact bias audit");
  audit_cmd->add_option("--n-bits", audit.n_bits, "output bits (<= 24)")->required();
  audit_cmd->add_option("--max-parity", audit.max_parity, "largest parity size audited");
  audit_cmd->add_option("--generator", audit.generator, "powering, composed, or uniform")
      ->check(CLI::IsMember({"powering", "composed", "uniform"}));
  audit_cmd->add_option("--r", audit.degree, "explicit field degree (powering)");
  audit_cmd->add_option("--log2-inv-eps", audit.log2_inv_eps, "bias exponent (default 3)");
  audit_cmd->add_option("--parity-limit", audit.parity_limit,
                        "guaranteed parity size (composed, default 4)");
  add_common(audit_cmd, &audit.common);

  HwCmd hw;
  auto* hw_cmd = app.add_subcommand("hw-moments",
                                    "moments of z^T B z - tr(B) on a seeded random B");
  hw_cmd->add_option("--n", hw.n, "matrix dimension (default 8)");
  hw_cmd->add_option("--ell", hw.ell, "moment order in {2,4,8,16} (default 2)");
  hw_cmd->add_option("--dist", hw.dist, "uniform or biased")
      ->check(CLI::IsMember({"uniform", "biased"}));
  hw_cmd->add_option("--method", hw.method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  hw_cmd->add_option("--generator", hw.generator, "powering or composed (biased dist)")
      ->check(CLI::IsMember({"powering", "composed"}));
  hw_cmd->add_option("--r", hw.degree, "explicit field degree (powering)");
  hw_cmd->add_option("--log2-inv-eps", hw.log2_inv_eps, "bias exponent (default 3)");
  hw_cmd->add_option("--parity-limit", hw.parity_limit, "composed parity limit (default 4)");
  hw_cmd->add_option("--trials", hw.trials, "Monte Carlo trials (default 1000)");
  hw_cmd->add_option("--c-hw", hw.c_hw, "asserted bound constant (default 8)");
  add_common(hw_cmd, &hw.common);
  add_seed(hw_cmd, &hw.seed);

  RipExactCmd rip;
  auto* rip_cmd = app.add_subcommand("rip-exact", "exact isometry constant of a matrix file");
  rip_cmd->add_option("--input", rip.input, "matrix file from `sample`")->required();
  rip_cmd->add_option("-k,--sparsity", rip.k, "subset size (default 2)");
  rip_cmd->add_option("--subset-csv", rip.subset_csv, "also write per-subset deltas as CSV");
  add_common(rip_cmd, &rip.common);

  JlCmd jl;
  auto* jl_cmd = app.add_subcommand("jl-tail", "tail rate of | ||Phi x||^2 - 1 | >= eta");
  jl_cmd->add_option("-N,--cols", jl.n_cols, "columns (default 64)");
  jl_cmd->add_option("-k,--sparsity", jl.k, "sparsity of x (default 4)");
  jl_cmd->add_option("--eta", jl.eta, "tail threshold (default 0.5)");
  jl_cmd->add_option("--q-sweep", jl.q_sweep, "comma-separated Q values");
  jl_cmd->add_option("--trials", jl.trials, "trials per Q (default 2000)");
  jl_cmd->add_option("--source", jl.source, "composed, direct, or independent baseline")
      ->check(CLI::IsMember({"composed", "direct", "independent"}));
  add_constants(jl_cmd, &jl.consts);
  add_common(jl_cmd, &jl.common);
  add_seed(jl_cmd, &jl.seed);

  RecoverCmd recover;
  auto* recover_cmd = app.add_subcommand("recover-demo", "OMP recovery success rate");
  recover_cmd->add_option("-N,--cols", recover.n_cols, "columns (default 256)");
  recover_cmd->add_option("-k,--sparsity", recover.k, "sparsity (default 4)");
  recover_cmd->add_option("--eta", recover.eta, "distortion (default 0.5)");
  recover_cmd->add_option("--q-cap", recover.q_cap, "cap on chosen Q");
  recover_cmd->add_option("--trials", recover.trials, "trials (default 50)");
  recover_cmd->add_option("--mode", recover.mode, "direct or composed")
      ->check(CLI::IsMember({"direct", "composed"}));
  recover_cmd->add_option("--min-success", recover.min_success,
                          "fail (exit 1) below this success rate");
  add_constants(recover_cmd, &recover.consts);
  add_common(recover_cmd, &recover.common);
  add_seed(recover_cmd, &recover.seed);

  BudgetCmd budget;
  auto* budget_cmd = app.add_subcommand("budget", "randomness budget accounting");
  budget_cmd->add_option("-N,--cols", budget.n_cols, "columns")->required();
  budget_cmd->add_option("-k,--sparsity", budget.k, "sparsity")->required();
  budget_cmd->add_option("--eta", budget.eta, "distortion (default 0.5)");
  budget_cmd->add_option("-Q,--rows", budget.q_override, "row override");
  budget_cmd->add_option("--ell", budget.ell_override, "moment-order override");
  budget_cmd->add_option("--mode", budget.mode, "direct or composed")
      ->check(CLI::IsMember({"direct", "composed"}));
  add_constants(budget_cmd, &budget.consts);
  add_common(budget_cmd, &budget.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidArgs;
  }

  try {
    if (sample_cmd->parsed()) return cmd_sample(sample, out, err);
    if (audit_cmd->parsed()) return cmd_audit(audit, out, err);
    if (hw_cmd->parsed()) return cmd_hw(hw, out, err);
    if (rip_cmd->parsed()) return cmd_rip_exact(rip, out, err);
    if (jl_cmd->parsed()) return cmd_jl(jl, out, err);
    if (recover_cmd->parsed()) return cmd_recover(recover, out, err);
    if (budget_cmd->parsed()) return cmd_budget(budget, out, err);
    err << "no subcommand\n";
    return kExitInvalidArgs;
  } catch (const capacity_error& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace brip::cli
