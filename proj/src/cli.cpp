// Copyright 2026 The monoseq Authors.
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

#include "monoseq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <zlib.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "monoseq/asymptotics.hpp"
#include "monoseq/comparison.hpp"
#include "monoseq/core_dp.hpp"
#include "monoseq/iid_benchmark.hpp"
#include "monoseq/policy_sim.hpp"
#include "monoseq/table_io.hpp"

namespace monoseq::cli {
namespace {

using json = nlohmann::json;

// Raised for failed checks (exit 1) as opposed to bad flags (exit 2).
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
  Index n = 0;
  Index n_min = 0;
  Index n_max = 0;
  Index replicates = 10000;
  std::uint64_t seed = kDefaultSeed;
  Index grid_size = kDefaultGridSize;
  unsigned threads = 0;
  int per_decade = 10;
  std::string output_path;
  std::string cache_path;
  std::string trace_path;
  std::string grid_output_path;
  std::string mode = "float64";
  std::string g_name = "f";
  std::string delta_name = "bhat";
  Format format = Format::csv;
  bool compress = false;
  bool use_f = false;
  bool exploratory = false;
};

void write_file(const std::string& path, const std::string& text, bool compress) {
  if (compress) {
    gzFile file = gzopen(path.c_str(), "wb");
    if (file == nullptr) throw std::runtime_error("cannot open '" + path + "' for writing");
    const int written = gzwrite(file, text.data(), static_cast<unsigned>(text.size()));
    gzclose(file);
    if (written != static_cast<int>(text.size())) throw std::runtime_error("gzip write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// Main output goes to --output when set, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    write_file(cfg.output_path, text, cfg.compress);
  }
}

ValueTable obtain_table(const RunConfig& cfg, Index n_max) {
  const Mode mode = parse_mode(cfg.mode);
  if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
    ValueTable cached = load_table(cfg.cache_path);
    if (cached.n_max() >= n_max && cached.mode() == mode) return cached;
  }
  ValueTable table = build_table(n_max, mode);
  if (!cfg.cache_path.empty()) save_table(cfg.cache_path, table);
  return table;
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string line;
  for (const auto& f : fields) {
    if (!line.empty()) line += ',';
    line += f;
  }
  return line + '\n';
}

std::string real(double x) { return format_real(x); }
std::string integer(Index x) { return std::to_string(x); }

json report_json(const SimReport& r) {
  return {{"n", r.n},          {"replicates", r.replicates}, {"policy", r.policy_id},
          {"mean", r.mean},    {"stderr", r.standard_error}, {"seed", r.seed}};
}

void write_trace(const std::string& path, const SelectionTrace& trace) {
  std::string text = "position,value\n";
  for (Index i = 0; i < trace.length(); ++i) {
    text += csv_line({integer(trace.accepted_positions[i]), integer(trace.accepted_values[i])});
  }
  write_file(path, text, false);
}

// --- table ---------------------------------------------------------------

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n_max);
  if (cfg.format == Format::json) {
    json rows = json::array();
    for (Index n = 1; n <= cfg.n_max; ++n) {
      const double nd = static_cast<double>(n);
      rows.push_back({{"n", n}, {"s", table(n)}, {"kstar", n >= 2 ? table.kstar(n) : 0},
                      {"sqrt2n", std::sqrt(2.0 * nd)}, {"f", f_approx(nd)}});
    }
    emit(cfg, json{{"mode", to_string(table.mode())}, {"rows", rows}}.dump(2) + "\n", out);
    return kExitOk;
  }
  std::string text = "n,s,kstar,sqrt2n,f\n";
  for (Index n = 1; n <= cfg.n_max; ++n) {
    const double nd = static_cast<double>(n);
    text += csv_line({integer(n), real(table(n)), integer(n >= 2 ? table.kstar(n) : 0),
                      real(std::sqrt(2.0 * nd)), real(f_approx(nd))});
  }
  emit(cfg, text, out);
  return kExitOk;
}

// --- crossover -----------------------------------------------------------

int cmd_crossover(const RunConfig& cfg, std::ostream& out) {
  Index found = 0;
  if (cfg.use_f) {
    for (Index n = 1; n <= cfg.n_max && found == 0; ++n) {
      const double nd = static_cast<double>(n);
      if (f_approx(nd) > std::sqrt(2.0 * nd)) found = n;
    }
  } else {
    const ValueTable table = obtain_table(cfg, cfg.n_max);
    for (Index n = 1; n <= cfg.n_max && found == 0; ++n) {
      if (table(n) > std::sqrt(2.0 * static_cast<double>(n))) found = n;
    }
  }
  if (found == 0) throw CheckFailed("no crossover at or below n=" + std::to_string(cfg.n_max));
  out << found << '\n';
  if (!cfg.use_f && found != 175) {
    throw CheckFailed("expected the first n with s(n) > sqrt(2n) to be 175");
  }
  return kExitOk;
}

// --- residuals / defect / kstar ------------------------------------------

struct ScanRow {
  Index n;
  double s;
  double f;
  double defect;
  Index kstar_dp;
  Index kstar_f;
};

ScanRow scan_row(const ValueTable& table, Index n) {
  const double f = f_approx(static_cast<double>(n));
  return {n, table(n), f, defect_at(n),
          n + 1 <= table.n_max() ? table.kstar(n + 1) : 0, n >= 2 ? kstar_from_f(n) : 1};
}

void emit_scan(const RunConfig& cfg, const std::vector<ScanRow>& rows, const json& summary,
               std::ostream& out) {
  if (cfg.format == Format::json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"n", r.n}, {"s", r.s}, {"f", r.f}, {"residual", r.s - r.f},
                       {"defect", r.defect}, {"kstar_dp", r.kstar_dp}, {"kstar_f", r.kstar_f}});
    }
    emit(cfg, json{{"summary", summary}, {"rows", jrows}}.dump(2) + "\n", out);
    return;
  }
  std::string text = "n,s,f,residual,defect,kstar_dp,kstar_f\n";
  for (const auto& r : rows) {
    text += csv_line({integer(r.n), real(r.s), real(r.f), real(r.s - r.f), real(r.defect),
                      integer(r.kstar_dp), integer(r.kstar_f)});
  }
  emit(cfg, text, out);
  if (!cfg.output_path.empty()) out << summary.dump() << '\n';
}

int cmd_residuals(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n_max + 1);
  const auto ns = log_spaced(cfg.n_min, cfg.n_max, cfg.per_decade);
  std::vector<ScanRow> rows;
  for (Index n : ns) rows.push_back(scan_row(table, n));
  const AsymptoticScan scan = residual_scan(table, ns);
  json summary = {{"points", ns.size()},
                  {"min_residual", scan.min_residual()},
                  {"max_residual", scan.max_residual()},
                  {"spread", scan.max_residual() - scan.min_residual()},
                  {"sign", scan.max_residual() < 0 ? "negative" : "mixed-or-positive"}};
  emit_scan(cfg, rows, summary, out);
  return kExitOk;
}

int cmd_defect(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n_max + 1);
  std::vector<ScanRow> rows;
  double b_hat = 0.0;
  for (Index n = 1; n <= cfg.n_max; ++n) {
    rows.push_back(scan_row(table, n));
    const double nd = static_cast<double>(n);
    b_hat = std::max(b_hat, std::abs(rows.back().defect) * nd * std::sqrt(nd));
  }
  emit_scan(cfg, rows, json{{"n_max", cfg.n_max}, {"B_estimate", b_hat}}, out);
  return kExitOk;
}

int cmd_kstar(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n_max + 1);
  Index checked = 0;
  Index violations = 0;
  Index first_violation = 0;
  Index max_gap = 0;
  for (Index n = std::max<Index>(cfg.n_min, 2); n <= cfg.n_max; ++n) {
    const Index k = kstar_from_f(n);
    const double root = std::sqrt(2.0 * static_cast<double>(n));
    ++checked;
    if (static_cast<double>(k) < root - 2.0 || static_cast<double>(k) > root + 2.0) {
      if (violations++ == 0) first_violation = n;
    }
    max_gap = std::max(max_gap, std::abs(k - table.kstar(n + 1)));
  }
  std::vector<ScanRow> rows;
  for (Index n : log_spaced(std::max<Index>(cfg.n_min, 2), cfg.n_max, cfg.per_decade)) {
    rows.push_back(scan_row(table, n));
  }
  json summary = {{"n_min", std::max<Index>(cfg.n_min, 2)}, {"n_max", cfg.n_max},
                  {"checked", checked},   {"violations", violations},
                  {"first_violation", first_violation}, {"max_gap_vs_dp", max_gap}};
  emit_scan(cfg, rows, summary, out);
  if (violations != 0) throw CheckFailed("kstar window violated at n=" + std::to_string(first_violation));
  return kExitOk;
}

// --- compare-lemmas -----------------------------------------------------

int cmd_compare_lemmas(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n_max);
  const DefectProfile profile = defect_profile(std::max<Index>(cfg.n_max, 10));

  SequenceFn g;
  if (cfg.g_name == "f") {
    g = [](Index n) { return f_approx(static_cast<double>(n)); };
  } else if (cfg.g_name == "s") {
    g = [&table](Index n) { return table(n); };
  } else if (cfg.g_name == "zero") {
    g = [](Index) { return 0.0; };
  } else if (cfg.g_name == "sqrt2n") {
    g = [](Index n) { return std::sqrt(2.0 * static_cast<double>(n)); };
  } else {
    throw std::invalid_argument("unknown --g '" + cfg.g_name + "'");
  }

  SequenceFn delta;
  double b_used = 0.0;
  if (cfg.delta_name == "bhat" || cfg.delta_name == "bhat-shifted") {
    b_used = cfg.delta_name == "bhat" ? profile.B : profile.B_shifted;
    delta = [b_used](Index n) { return b_used * std::pow(static_cast<double>(n), -1.5); };
  } else if (cfg.delta_name == "zero") {
    delta = [](Index) { return 0.0; };
  } else if (cfg.delta_name == "one") {
    delta = [](Index) { return 1.0; };
  } else if (cfg.delta_name == "inv-n") {
    delta = [](Index n) { return 1.0 / static_cast<double>(n); };
  } else {
    throw std::invalid_argument("unknown --delta '" + cfg.delta_name + "'");
  }

  const ComparisonReport upper = verify_upper_comparison(g, delta, table, cfg.n_max);
  const ComparisonReport lower = verify_lower_comparison(g, delta, table, cfg.n_max);
  const ComparisonReport merged = merge_brackets(upper, lower);
  const bool contains = merged.brackets(table);

  auto first = [](const std::vector<Index>& v) { return v.empty() ? Index{0} : v.front(); };
  json summary = {{"n_max", cfg.n_max},
                  {"g", cfg.g_name},
                  {"delta", cfg.delta_name},
                  {"B_used", b_used},
                  {"upper_status", to_string(upper.status)},
                  {"lower_status", to_string(lower.status)},
                  {"upper_hypothesis_failures", upper.hypothesis_failures.size()},
                  {"lower_hypothesis_failures", lower.hypothesis_failures.size()},
                  {"first_upper_hypothesis_failure", first(upper.hypothesis_failures)},
                  {"first_lower_hypothesis_failure", first(lower.hypothesis_failures)},
                  {"bracket_contains_s", contains}};

  if (cfg.format == Format::json) {
    emit(cfg, summary.dump(2) + "\n", out);
  } else {
    std::string text = "n,s,g,delta,cumulative,bracket_low,bracket_high\n";
    for (Index n = 1; n <= cfg.n_max; ++n) {
      text += csv_line({integer(n), real(table(n)), real(merged.g(n)), real(merged.delta(n)),
                        real(merged.cumulative(n)), real(merged.bracket_low(n)),
                        real(merged.bracket_high(n))});
    }
    emit(cfg, text, out);
    if (!cfg.output_path.empty()) out << summary.dump() << '\n';
  }
  if (upper.status == ComparisonStatus::implementation_bug ||
      lower.status == ComparisonStatus::implementation_bug) {
    throw CheckFailed("comparison conclusion failed with hypotheses intact");
  }
  if (!contains && upper.status == ComparisonStatus::holds && lower.status == ComparisonStatus::holds) {
    throw CheckFailed("bracket misses s(n)");
  }
  return kExitOk;
}

// --- simulate / reduce / lis / iid ---------------------------------------

SimConfig sim_config(const RunConfig& cfg) {
  return {cfg.n, cfg.replicates, cfg.seed, cfg.threads};
}

int emit_report(const RunConfig& cfg, const SimReport& report, std::ostream& out) {
  emit(cfg, report_json(report).dump() + "\n", out);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const ValueTable table = obtain_table(cfg, cfg.n);
  if (!cfg.trace_path.empty()) {
    Xoshiro256 rng = replicate_stream(cfg.seed, 0);
    write_trace(cfg.trace_path, run_policy(random_permutation(cfg.n, rng), table));
  }
  return emit_report(cfg, simulate_optimal(sim_config(cfg), table), out);
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  const IidValueGrid grid = build_grid(cfg.n, cfg.grid_size, GridStorage::full);
  if (!cfg.trace_path.empty()) {
    Xoshiro256 rng = replicate_stream(cfg.seed, 0);
    const Permutation perm = random_permutation(cfg.n, rng);
    write_trace(cfg.trace_path, reduction_Aprime(perm, grid, rng));
  }
  return emit_report(cfg, simulate_reduction(sim_config(cfg), grid), out);
}

int cmd_lis(const RunConfig& cfg, std::ostream& out) {
  return emit_report(cfg, simulate_lis(sim_config(cfg)), out);
}

int cmd_iid(const RunConfig& cfg, std::ostream& out) {
  const ShatSummary summary = shat_with_error(cfg.n_max, cfg.grid_size);
  auto ratio = [&](Index n) {
    // (sqrt(2n) - shat(n)) / log n: exploratory look at the log-order gap.
    const double nd = static_cast<double>(n);
    return n >= 2 ? (std::sqrt(2.0 * nd) - summary.shat[n]) / std::log(nd) : 0.0;
  };
  if (cfg.format == Format::json) {
    json rows = json::array();
    for (Index n = 1; n <= cfg.n_max; ++n) {
      json row = {{"n", n}, {"shat", summary.shat[n]}, {"err_bar", summary.err_bar[n]}};
      if (cfg.exploratory) row["exploratory_log_gap_ratio"] = ratio(n);
      rows.push_back(row);
    }
    emit(cfg, json{{"grid_size", cfg.grid_size}, {"rows", rows}}.dump(2) + "\n", out);
  } else {
    std::string text = cfg.exploratory ? "n,shat,err_bar,exploratory_log_gap_ratio\n" : "n,shat,err_bar\n";
    for (Index n = 1; n <= cfg.n_max; ++n) {
      std::string line = integer(n) + ',' + real(summary.shat[n]) + ',' + real(summary.err_bar[n]);
      if (cfg.exploratory) line += ',' + real(ratio(n));
      text += line + '\n';
    }
    emit(cfg, text, out);
  }
  if (!cfg.grid_output_path.empty()) {
    const IidValueGrid grid = build_grid(cfg.n_max, cfg.grid_size, GridStorage::full);
    std::string text = "m,j,y,v\n";
    for (Index m = 0; m <= grid.horizon(); ++m) {
      for (Index j = 0; j <= grid.grid_size(); ++j) {
        text += csv_line({integer(m), integer(j),
                          real(static_cast<double>(j) / static_cast<double>(grid.grid_size())),
                          real(grid.value(m, j))});
      }
    }
    write_file(cfg.grid_output_path, text, cfg.compress);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal online selection of increasing subsequences"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "csv";

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output_path, "Write the main output to this file");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--compress", cfg.compress, "gzip files written with --output");
  };
  auto add_table = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "float64 or exact-rational")
        ->check(CLI::IsMember({"float64", "exact-rational"}));
    sub->add_option("--cache", cfg.cache_path, "Value table cache file (read if present, else written)");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Permutation length")->required()->check(CLI::PositiveNumber);
    sub->add_option("--replicates", cfg.replicates, "Monte Carlo replicates")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed (default 42)");
    sub->add_option("--threads", cfg.threads, "Worker threads (default: all cores)");
    sub->add_option("--trace-output", cfg.trace_path, "CSV of replicate 0's selections");
    sub->add_option("-o,--output", cfg.output_path, "Write the JSON report to this file");
    sub->add_flag("--compress", cfg.compress, "gzip the report file");
  };

  auto* table = app.add_subcommand("table", "Tabulate s(n)");
  table->add_option("--n-max", cfg.n_max)->required()->check(CLI::PositiveNumber);
  add_table(table);
  add_output(table);

  auto* crossover = app.add_subcommand("crossover", "First n with s(n) > sqrt(2n)");
  cfg.n_max = 1000;
  crossover->add_option("--n-max", cfg.n_max, "Search limit")->check(CLI::PositiveNumber);
  crossover->add_flag("--use-f", cfg.use_f, "Scan f(n) = sqrt(2n) + log(n)/6 instead of s(n)");
  add_table(crossover);

  auto* residuals = app.add_subcommand("residuals", "s(n) - f(n) at log-spaced n");
  auto* defect = app.add_subcommand("defect", "Recursion defect of f for n <= n-max");
  auto* kstar = app.add_subcommand("kstar", "Check sqrt(2n)-2 <= kstar_f(n) <= sqrt(2n)+2");
  for (auto* sub : {residuals, defect, kstar}) {
    sub->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
    sub->add_option("--per-decade", cfg.per_decade, "Sample density for log-spaced rows")
        ->check(CLI::PositiveNumber);
    add_table(sub);
    add_output(sub);
  }
  for (auto* sub : {residuals, kstar}) {
    sub->add_option("--n-min", cfg.n_min)->check(CLI::PositiveNumber);
  }

  auto* compare = app.add_subcommand("compare-lemmas", "Bracket s(n) by the comparison principles");
  compare->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
  compare->add_option("--g", cfg.g_name, "Candidate: f, s, zero, sqrt2n")
      ->check(CLI::IsMember({"f", "s", "zero", "sqrt2n"}));
  compare->add_option("--delta", cfg.delta_name, "Slack: bhat, bhat-shifted, zero, one, inv-n")
      ->check(CLI::IsMember({"bhat", "bhat-shifted", "zero", "one", "inv-n"}));
  add_table(compare);
  add_output(compare);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the optimal policy");
  auto* reduce = app.add_subcommand("reduce", "Monte Carlo of the randomized i.i.d. reduction");
  auto* lis = app.add_subcommand("lis", "Monte Carlo of the offline longest increasing subsequence");
  for (auto* sub : {simulate, reduce, lis}) add_sim(sub);
  add_table(simulate);
  reduce->add_option("--grid-size", cfg.grid_size, "Grid resolution M")->check(CLI::PositiveNumber);

  auto* iid = app.add_subcommand("iid", "Value iteration for i.i.d. uniform selection");
  iid->add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
  iid->add_option("--grid-size", cfg.grid_size, "Grid resolution M")->check(CLI::PositiveNumber);
  iid->add_option("--grid-output", cfg.grid_output_path, "Export v as CSV m,j,y,v");
  iid->add_flag("--exploratory", cfg.exploratory,
                "Add the exploratory column (sqrt(2n) - shat(n)) / log n");
  add_output(iid);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }
  cfg.format = format == "json" ? Format::json : Format::csv;

  // Per-command defaults for ranges left unset.
  auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const CLI::Option* n_max_flag = chosen->get_option_no_throw("--n-max");
  if (n_max_flag != nullptr && n_max_flag->count() == 0 && name != "crossover") {
    cfg.n_max = name == "residuals" ? 1000000
              : name == "kstar"     ? 1000000
              : name == "defect"    ? 10000
              : name == "compare-lemmas" ? 100000
              : 100;
  }
  if (cfg.n_min == 0) {
    cfg.n_min = name == "residuals" ? std::min<Index>(1000, cfg.n_max)
              : name == "kstar"     ? std::min<Index>(2, cfg.n_max)
                                    : std::min<Index>(10, cfg.n_max);
  }

  try {
    if (name == "table") return cmd_table(cfg, out);
    if (name == "crossover") return cmd_crossover(cfg, out);
    if (name == "residuals") return cmd_residuals(cfg, out);
    if (name == "defect") return cmd_defect(cfg, out);
    if (name == "kstar") return cmd_kstar(cfg, out);
    if (name == "compare-lemmas") return cmd_compare_lemmas(cfg, out);
    if (name == "simulate") return cmd_simulate(cfg, out);
    if (name == "reduce") return cmd_reduce(cfg, out);
    if (name == "lis") return cmd_lis(cfg, out);
    if (name == "iid") return cmd_iid(cfg, out);
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {
    // domain_error / length_error: the flags asked for something out of range.
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace monoseq::cli
