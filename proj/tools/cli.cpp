// Copyright 2026 The nopa-bell Authors
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

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nopabell/bell.hpp"
#include "nopabell/correlations.hpp"
#include "nopabell/errors.hpp"
#include "nopabell/fock.hpp"
#include "nopabell/number_bits.hpp"
#include "nopabell/pseudospin.hpp"
#include "nopabell/sampler.hpp"

namespace nopabell::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Output table plumbing

using Value = std::variant<double, std::int64_t, std::uint64_t, bool,
                           std::string>;

struct Row {
  std::vector<std::pair<std::string, Value>> cells;

  Row& set(const std::string& column, Value value) {
    cells.emplace_back(column, std::move(value));
    return *this;
  }
};

// %.17g: enough digits that strtod reproduces the exact double.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string to_csv_cell(const Value& value) {
  struct Visitor {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
      return csv_escape(v);
    }
  };
  return std::visit(Visitor{}, value);
}

json to_json_cell(const Value& value) {
  struct Visitor {
    json operator()(double v) const { return v; }
    json operator()(std::int64_t v) const { return v; }
    json operator()(std::uint64_t v) const { return v; }
    json operator()(bool v) const { return v; }
    json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, value);
}

struct OutputConfig {
  std::string format = "csv";
  std::string path;  // empty: write to the main output stream
};

void write_rows(const std::vector<Row>& rows, const OutputConfig& output,
                const json& meta, std::ostream& fallback) {
  std::ofstream file;
  std::ostream* sink = &fallback;
  if (!output.path.empty()) {
    file.open(output.path);
    if (!file) {
      throw InvalidParameter("cannot open output file: " + output.path);
    }
    sink = &file;
  }

  if (output.format == "json") {
    json doc;
    doc["meta"] = meta;
    doc["rows"] = json::array();
    for (const Row& row : rows) {
      json obj = json::object();
      for (const auto& [column, value] : row.cells) {
        obj[column] = to_json_cell(value);
      }
      doc["rows"].push_back(std::move(obj));
    }
    *sink << doc.dump(2) << '\n';
    return;
  }

  if (rows.empty()) return;
  for (std::size_t i = 0; i < rows.front().cells.size(); ++i) {
    *sink << (i ? "," : "") << csv_escape(rows.front().cells[i].first);
  }
  *sink << '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      *sink << (i ? "," : "") << to_csv_cell(row.cells[i].second);
    }
    *sink << '\n';
  }
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

std::string trimmed_lower(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return s;
}

double parse_full_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidParameter(std::string("cannot parse ") + what + ": '" + text +
                         "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, ',')) items.push_back(item);
  if (items.empty()) items.push_back("");
  return items;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> angles;
  for (const std::string& item : split_list(text)) {
    angles.push_back(parse_angle(item));
  }
  return angles;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  for (const std::string& item : split_list(text)) {
    values.push_back(parse_full_double(item, what));
  }
  return values;
}

TruncatedFockSpace make_space(int log2_dim, double r) {
  if (log2_dim == 0) return TruncatedFockSpace::for_squeezing(r);
  return TruncatedFockSpace(log2_dim);
}

XorForm parse_form(const std::string& text) {
  const std::string s = trimmed_lower(text);
  if (s == "tight") return XorForm::Tight;
  if (s == "corollary") return XorForm::Corollary;
  throw InvalidParameter("unknown inequality form: '" + text +
                         "' (expected tight or corollary)");
}

// ---------------------------------------------------------------------------
// Shared row builders

void add_planar_columns(Row& row, const PlanarLhs& f, double gamma) {
  const BellReport at_gamma = [&] {
    BellReport rep;
    rep.lhs = f(gamma);
    rep.classical_bound = f.bound();
    rep.violation = rep.lhs - rep.classical_bound;
    return rep;
  }();
  const OptimalAngle best = f.optimum();
  row.set("gamma", gamma)
      .set("lhs", at_gamma.lhs)
      .set("bound", at_gamma.classical_bound)
      .set("violation", at_gamma.violation)
      .set("gamma_star", best.gamma_star)
      .set("gamma_star_over_pi",
           std::string([&] {
             char buf[32];
             std::snprintf(buf, sizeof buf, "%.6f",
                           best.gamma_star / std::numbers::pi);
             return std::string(buf);
           }()))
      .set("max_lhs", best.max_lhs);
}

std::vector<double> gamma_grid(const std::string& gamma_list, int gamma_steps,
                               bool optimal, const PlanarLhs& f) {
  if (optimal) return {f.optimum().gamma_star};
  if (gamma_steps > 0) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(gamma_steps));
    for (int j = 0; j < gamma_steps; ++j) {
      grid.push_back(2.0 * std::numbers::pi * j / gamma_steps);
    }
    return grid;
  }
  if (!gamma_list.empty()) return parse_angle_list(gamma_list);
  return {std::numbers::pi / 4.0};
}

void append_report_rows(std::vector<Row>& rows, const AlgebraReport& report,
                        const std::string& suite) {
  for (const IdentityCheck& check : report.checks) {
    Row row;
    row.set("suite", suite)
        .set("check", check.name)
        .set("residual", check.residual)
        .set("tolerance", check.tolerance)
        .set("pass", check.pass);
    rows.push_back(std::move(row));
  }
}

// ---------------------------------------------------------------------------
// Subcommand configuration

struct CommonOptions {
  OutputConfig output;
  int log2_dim = 0;  // 0: auto from r
};

void attach_common(CLI::App* cmd, CommonOptions& common, bool with_space) {
  cmd->add_option("--format", common.output.format,
                  "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", common.output.path,
                  "Write results to this file instead of standard output");
  if (with_space) {
    cmd->add_option(
           "--D", common.log2_dim,
           "log2 of the truncation dimension (0 = choose from r so the "
           "tail weight is at most 1e-9)")
        ->check(CLI::Range(0, 16));
  }
}

json base_meta(const std::string& command, const json& config,
               std::optional<std::uint64_t> seed = std::nullopt) {
  json meta;
  meta["version"] = kVersion;
  meta["seed"] = seed.has_value() ? json(*seed) : json(nullptr);
  json cfg = config;
  cfg["command"] = command;
  meta["config"] = cfg;
  return meta;
}

int finish(const std::vector<Row>& rows, const OutputConfig& output,
           const json& meta, std::ostream& out, bool pass = true) {
  write_rows(rows, output, meta, out);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Subcommands

int run_verify(const CommonOptions& common, std::ostream& out) {
  const int depth = common.log2_dim == 0 ? 4 : common.log2_dim;
  const TruncatedFockSpace space(depth);

  std::vector<Row> rows;
  bool all_pass = true;

  for (std::size_t d = 1; 2 * d <= space.dim(); d *= 2) {
    const AlgebraReport algebra = verify_spin_algebra(d, space);
    append_report_rows(rows, algebra, "spin-algebra d=" + std::to_string(d));
    all_pass = all_pass && algebra.all_pass;
  }
  if (depth >= 2) {
    const AlgebraReport hierarchy = verify_hierarchy(depth - 1, space);
    append_report_rows(rows, hierarchy, "commuting-hierarchy");
    all_pass = all_pass && hierarchy.all_pass;
  }
  const AlgebraReport product = product_decomposition_check(space);
  append_report_rows(rows, product, "product-decomposition");
  all_pass = all_pass && product.all_pass;

  const AlgebraReport eigen = verify_eigenvectors(space);
  append_report_rows(rows, eigen, "eigenvectors");
  all_pass = all_pass && eigen.all_pass;

  const json meta = base_meta("verify", {{"D", depth}});
  return finish(rows, common.output, meta, out, all_pass);
}

int run_correlate(const CommonOptions& common, const std::string& r_list,
                  std::size_t d, const std::string& alpha_list,
                  const std::string& beta_list, std::ostream& out) {
  const std::vector<double> rs = parse_double_list(r_list, "squeezing r");
  const std::vector<double> alphas = parse_angle_list(alpha_list);
  const std::vector<double> betas = parse_angle_list(beta_list);

  std::vector<Row> rows;
  for (double r : rs) {
    const TruncatedFockSpace space = make_space(common.log2_dim, r);
    for (double alpha : alphas) {
      for (double beta : betas) {
        const CorrelationQuery query{alpha, beta, d, r};
        const NumericCorrelation numeric = numeric_correlation(query, space);
        Row row;
        row.set("r", r)
            .set("d", static_cast<std::uint64_t>(d))
            .set("alpha", alpha)
            .set("beta", beta)
            .set("analytic", numeric.analytic)
            .set("numeric", numeric.value)
            .set("abs_err", numeric.abs_err)
            .set("tail_weight", numeric.tail_weight);
        rows.push_back(std::move(row));
      }
    }
  }

  const json meta = base_meta("correlate", {{"r", r_list},
                                            {"d", d},
                                            {"alpha", alpha_list},
                                            {"beta", beta_list},
                                            {"D", common.log2_dim}});
  return finish(rows, common.output, meta, out);
}

struct PlanarCliArgs {
  std::string r_list = "1";
  std::string gamma_list;
  int gamma_steps = 0;
  bool optimal = false;
  std::string form = "tight";
};

void attach_planar(CLI::App* cmd, PlanarCliArgs& args, bool with_form) {
  cmd->add_option("--r", args.r_list,
                  "Squeezing parameter(s), comma separated");
  cmd->add_option("--gamma", args.gamma_list,
                  "Setting angle(s); radians or multiples of pi (pi/4)");
  cmd->add_option("--gamma-steps", args.gamma_steps,
                  "Evaluate on this many equispaced angles in [0, 2pi)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--optimal", args.optimal,
                "Evaluate at the maximizing angle gamma*");
  if (with_form) {
    cmd->add_option("--form", args.form,
                    "Inequality form: tight or corollary")
        ->check(CLI::IsMember({"tight", "corollary"}));
  }
}

// Closed-form planar sweep shared by the chsh/bit/number/hamming/weighted
// subcommands; `index` contributes the identifying columns for the family
// member (grouping d, bit index k, or the weight vector).
template <typename MakeLhs, typename IndexColumns>
int run_planar(const std::string& command, const CommonOptions& common,
               const PlanarCliArgs& args, MakeLhs&& make_lhs,
               IndexColumns&& index, const json& config, std::ostream& out) {
  std::vector<Row> rows;
  for (double r : parse_double_list(args.r_list, "squeezing r")) {
    const PlanarLhs f = make_lhs(r);
    for (double gamma :
         gamma_grid(args.gamma_list, args.gamma_steps, args.optimal, f)) {
      Row row;
      row.set("r", r);
      index(row);
      add_planar_columns(row, f, gamma);
      rows.push_back(std::move(row));
    }
  }
  json cfg = config;
  cfg["r"] = args.r_list;
  cfg["optimal"] = args.optimal;
  if (!args.gamma_list.empty()) cfg["gamma"] = args.gamma_list;
  if (args.gamma_steps > 0) cfg["gamma_steps"] = args.gamma_steps;
  return finish(rows, common.output, base_meta(command, cfg), out);
}

int run_sample(const CommonOptions& common, const std::string& kind_name,
               const std::string& gamma_text, bool optimal, std::size_t d,
               int k, const std::string& weight_list, const std::string& form,
               double r, std::uint64_t shots, std::uint64_t seed,
               std::ostream& out) {
  BellSamplingPlan plan;
  plan.r = r;
  plan.shots = shots;
  plan.seed = seed;
  plan.d = d;
  plan.k = k;
  plan.form = parse_form(form);

  PlanarLhs analytic{0.0, 0.0, plan.form};
  const std::string kind = trimmed_lower(kind_name);
  if (kind == "chsh") {
    plan.kind = BellKind::Chsh;
    analytic = chsh_lhs(d, r);
  } else if (kind == "bit") {
    plan.kind = BellKind::BitXor;
    analytic = bit_lhs(k, r, plan.form);
  } else if (kind == "number") {
    plan.kind = BellKind::NumberXor;
    analytic = number_lhs(static_cast<int>(d), r, plan.form);
  } else if (kind == "hamming") {
    plan.kind = BellKind::Hamming;
    analytic = hamming_lhs(static_cast<int>(d), r, plan.form);
  } else if (kind == "weighted") {
    plan.kind = BellKind::Weighted;
    plan.weights = parse_double_list(weight_list, "bit weight");
    analytic = weighted_lhs(plan.weights, r, plan.form);
  } else {
    throw InvalidParameter(
        "unknown kind: '" + kind_name +
        "' (expected chsh, bit, number, hamming, or weighted)");
  }

  plan.gamma =
      optimal ? analytic.optimum().gamma_star : parse_angle(gamma_text);

  const TruncatedFockSpace space = make_space(common.log2_dim, r);
  const BellReport report = estimate_bell(plan, space);
  const double expected = analytic(plan.gamma);
  const double std_error = report.standard_error.value_or(0.0);

  Row row;
  row.set("kind", to_string(plan.kind))
      .set("r", r)
      .set("d", static_cast<std::uint64_t>(plan.d))
      .set("k", static_cast<std::int64_t>(plan.k))
      .set("gamma", plan.gamma)
      .set("form", std::string(plan.form == XorForm::Tight ? "tight"
                                                           : "corollary"))
      .set("shots", shots)
      .set("seed", seed)
      .set("analytic_lhs", expected)
      .set("lhs", report.lhs)
      .set("std_err", std_error)
      .set("z_score",
           std_error > 0.0 ? (report.lhs - expected) / std_error : 0.0)
      .set("bound", report.classical_bound)
      .set("violation", report.violation);
  if (!report.warning.empty()) row.set("warning", report.warning);

  const json meta = base_meta("sample",
                              {{"kind", kind},
                               {"r", r},
                               {"d", d},
                               {"k", k},
                               {"gamma", plan.gamma},
                               {"form", form},
                               {"shots", shots},
                               {"D", common.log2_dim}},
                              seed);
  return finish({row}, common.output, meta, out);
}

int run_lhv(const CommonOptions& common, const std::string& angles_text,
            std::uint64_t shots, std::uint64_t seed, std::ostream& out) {
  const std::vector<double> parsed = parse_angle_list(angles_text);
  if (parsed.size() != 4) {
    throw InvalidParameter(
        "--angles needs exactly four comma-separated settings");
  }
  const AngleSet angles{parsed[0], parsed[1], parsed[2], parsed[3]};
  const BellReport report = lhv_estimate(angles, shots, seed);
  const double analytic =
      std::abs(lhv_correlation(angles.alpha, angles.gamma) +
               lhv_correlation(angles.alpha, angles.delta)) +
      std::abs(lhv_correlation(angles.beta, angles.gamma) -
               lhv_correlation(angles.beta, angles.delta));

  Row row;
  row.set("alpha", angles.alpha)
      .set("beta", angles.beta)
      .set("gamma", angles.gamma)
      .set("delta", angles.delta)
      .set("shots", shots)
      .set("seed", seed)
      .set("analytic_lhs", analytic)
      .set("lhs", report.lhs)
      .set("std_err", report.standard_error.value_or(0.0))
      .set("bound", report.classical_bound)
      .set("violation", report.violation);

  const json meta = base_meta(
      "lhv", {{"angles", angles_text}, {"shots", shots}}, seed);
  return finish({row}, common.output, meta, out);
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string s = trimmed_lower(text);
  if (s.empty()) throw InvalidParameter("empty angle");

  const std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    return parse_full_double(s, "angle");
  }

  double sign = 1.0;
  std::string coeff_text = s.substr(0, pi_pos);
  if (!coeff_text.empty() && (coeff_text[0] == '+' || coeff_text[0] == '-')) {
    if (coeff_text[0] == '-') sign = -1.0;
    coeff_text.erase(0, 1);
  }
  if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
  const double coeff =
      coeff_text.empty() ? 1.0 : parse_full_double(coeff_text, "angle");

  std::string tail = s.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') {
      throw InvalidParameter("cannot parse angle: '" + text + "'");
    }
    divisor = parse_full_double(tail.substr(1), "angle");
    if (divisor == 0.0) throw InvalidParameter("angle divides by zero");
  }
  return sign * coeff * std::numbers::pi / divisor;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Pseudospin and number-bit Bell inequalities on truncated "
               "Fock spaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // verify ------------------------------------------------------------
  CommonOptions verify_common;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the operator algebra, the commuting hierarchy, the "
                "product decomposition, and the eigenvector identities");
  attach_common(verify, verify_common, /*with_space=*/true);

  // correlate ----------------------------------------------------------
  CommonOptions corr_common;
  std::string corr_r = "1";
  std::size_t corr_d = 1;
  std::string corr_alpha = "pi/2";
  std::string corr_beta = "pi/2";
  CLI::App* correlate = app.add_subcommand(
      "correlate", "Analytic vs numeric spin correlations on the squeezed "
                   "state");
  attach_common(correlate, corr_common, true);
  correlate->add_option("--r", corr_r, "Squeezing parameter(s)");
  correlate->add_option("--d", corr_d, "Grouping depth")
      ->check(CLI::PositiveNumber);
  correlate->add_option("--alpha", corr_alpha, "First-side angle(s)");
  correlate->add_option("--beta", corr_beta, "Second-side angle(s)");

  // closed-form planar families -----------------------------------------
  CommonOptions chsh_common;
  PlanarCliArgs chsh_args;
  std::size_t chsh_d = 1;
  CLI::App* chsh =
      app.add_subcommand("chsh", "Spin CHSH functional (closed form)");
  attach_common(chsh, chsh_common, false);
  attach_planar(chsh, chsh_args, false);
  chsh->add_option("--d", chsh_d, "Grouping depth")
      ->check(CLI::PositiveNumber);

  CommonOptions bit_common;
  PlanarCliArgs bit_args;
  int bit_k = 0;
  CLI::App* bit = app.add_subcommand(
      "bit-bell", "Single-bit XOR functional (closed form)");
  attach_common(bit, bit_common, false);
  attach_planar(bit, bit_args, true);
  bit->add_option("--k", bit_k, "Bit index")->check(CLI::NonNegativeNumber);

  CommonOptions number_common;
  PlanarCliArgs number_args;
  int number_d = 2;
  CLI::App* number = app.add_subcommand(
      "number-bell", "Binary-weighted number XOR functional (closed form)");
  attach_common(number, number_common, false);
  attach_planar(number, number_args, true);
  number->add_option("--d", number_d, "Bit count")
      ->check(CLI::PositiveNumber);

  CommonOptions hamming_common;
  PlanarCliArgs hamming_args;
  int hamming_d = 2;
  CLI::App* hamming = app.add_subcommand(
      "hamming-bell", "Equal-weight (bit count) XOR functional "
                      "(closed form)");
  attach_common(hamming, hamming_common, false);
  attach_planar(hamming, hamming_args, true);
  hamming->add_option("--d", hamming_d, "Bit count")
      ->check(CLI::PositiveNumber);

  CommonOptions weighted_common;
  PlanarCliArgs weighted_args;
  std::string weighted_weights = "1";
  CLI::App* weighted = app.add_subcommand(
      "weighted-bell", "Arbitrary-weight bit XOR functional (closed form)");
  attach_common(weighted, weighted_common, false);
  attach_planar(weighted, weighted_args, true);
  weighted->add_option("--weights", weighted_weights,
                       "Comma-separated nonnegative weight per bit");

  // sample ---------------------------------------------------------------
  CommonOptions sample_common;
  std::string sample_kind = "chsh";
  std::string sample_gamma = "pi/4";
  bool sample_optimal = false;
  std::size_t sample_d = 1;
  int sample_k = 0;
  std::string sample_weights = "1";
  std::string sample_form = "tight";
  double sample_r = 1.0;
  std::uint64_t sample_shots = 100000;
  std::uint64_t sample_seed = 1;
  CLI::App* sample = app.add_subcommand(
      "sample", "Monte Carlo estimate of a Bell functional");
  attach_common(sample, sample_common, true);
  sample->add_option("--kind", sample_kind,
                     "chsh, bit, number, hamming, or weighted");
  sample->add_option("--gamma", sample_gamma, "Setting angle");
  sample->add_flag("--optimal", sample_optimal,
                   "Sample at the maximizing angle gamma*");
  sample->add_option("--d", sample_d, "Grouping depth or bit count")
      ->check(CLI::PositiveNumber);
  sample->add_option("--k", sample_k, "Bit index (kind = bit)")
      ->check(CLI::NonNegativeNumber);
  sample->add_option("--weights", sample_weights,
                     "Weights (kind = weighted)");
  sample->add_option("--form", sample_form, "tight or corollary")
      ->check(CLI::IsMember({"tight", "corollary"}));
  sample->add_option("--r", sample_r, "Squeezing parameter");
  sample->add_option("--shots", sample_shots, "Shots per term")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "Random seed");

  // lhv --------------------------------------------------------------------
  CommonOptions lhv_common;
  std::string lhv_angles = "0,pi/2,pi/4,-pi/4";
  std::uint64_t lhv_shots = 100000;
  std::uint64_t lhv_seed = 1;
  CLI::App* lhv = app.add_subcommand(
      "lhv", "Classical hidden-variable baseline for the CHSH functional");
  attach_common(lhv, lhv_common, false);
  lhv->add_option("--angles", lhv_angles,
                  "alpha,beta,gamma,delta measurement settings");
  lhv->add_option("--shots", lhv_shots, "Shots per setting pair")
      ->check(CLI::PositiveNumber);
  lhv->add_option("--seed", lhv_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help (and help for subcommands) lands here by design.
      out << app.help();
      return 0;
    }
    err << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump()
        << '\n';
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(verify_common, out);
    if (correlate->parsed()) {
      return run_correlate(corr_common, corr_r, corr_d, corr_alpha,
                           corr_beta, out);
    }
    if (chsh->parsed()) {
      return run_planar(
          "chsh", chsh_common, chsh_args,
          [&](double r) { return chsh_lhs(chsh_d, r); },
          [&](Row& row) {
            row.set("d", static_cast<std::uint64_t>(chsh_d));
          },
          {{"d", chsh_d}}, out);
    }
    if (bit->parsed()) {
      const XorForm form = parse_form(bit_args.form);
      return run_planar(
          "bit-bell", bit_common, bit_args,
          [&](double r) { return bit_lhs(bit_k, r, form); },
          [&](Row& row) {
            row.set("k", static_cast<std::int64_t>(bit_k))
                .set("form", bit_args.form);
          },
          {{"k", bit_k}, {"form", bit_args.form}}, out);
    }
    if (number->parsed()) {
      const XorForm form = parse_form(number_args.form);
      return run_planar(
          "number-bell", number_common, number_args,
          [&](double r) { return number_lhs(number_d, r, form); },
          [&](Row& row) {
            row.set("d", static_cast<std::int64_t>(number_d))
                .set("form", number_args.form);
          },
          {{"d", number_d}, {"form", number_args.form}}, out);
    }
    if (hamming->parsed()) {
      const XorForm form = parse_form(hamming_args.form);
      return run_planar(
          "hamming-bell", hamming_common, hamming_args,
          [&](double r) { return hamming_lhs(hamming_d, r, form); },
          [&](Row& row) {
            row.set("d", static_cast<std::int64_t>(hamming_d))
                .set("form", hamming_args.form);
          },
          {{"d", hamming_d}, {"form", hamming_args.form}}, out);
    }
    if (weighted->parsed()) {
      const XorForm form = parse_form(weighted_args.form);
      const std::vector<double> weights =
          parse_double_list(weighted_weights, "bit weight");
      std::string joined;
      for (double w : weights) {
        if (!joined.empty()) joined += ';';
        joined += format_double(w);
      }
      return run_planar(
          "weighted-bell", weighted_common, weighted_args,
          [&](double r) { return weighted_lhs(weights, r, form); },
          [&](Row& row) {
            row.set("weights", joined).set("form", weighted_args.form);
          },
          {{"weights", weighted_weights}, {"form", weighted_args.form}},
          out);
    }
    if (sample->parsed()) {
      return run_sample(sample_common, sample_kind, sample_gamma,
                        sample_optimal, sample_d, sample_k, sample_weights,
                        sample_form, sample_r, sample_shots, sample_seed,
                        out);
    }
    if (lhv->parsed()) {
      return run_lhv(lhv_common, lhv_angles, lhv_shots, lhv_seed, out);
    }
    err << json{{"error",
                 {{"code", "usage"}, {"message", "no subcommand given"}}}}
               .dump()
        << '\n';
    return 2;
  } catch (const Error& e) {
    err << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump()
        << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}
               .dump()
        << '\n';
    return 1;
  }
}

}  // namespace nopabell::cli
