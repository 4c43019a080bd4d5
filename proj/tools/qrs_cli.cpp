// Copyright 2026 The QRS Authors
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

// qrs: command-line front end for the supply-network risk pipeline.

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "qrs/report.hpp"

namespace {

using qrs::Json;
namespace fs = std::filesystem;

/// Bad flag values or config contents; reported like parse errors.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  std::optional<std::string> config_file;
  std::optional<std::string> net;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario;
  std::optional<std::size_t> qubits;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> max_iters;
  std::optional<std::string> optimizer;
  std::optional<std::size_t> steps;
  std::optional<double> tmax;
  std::optional<std::size_t> pad;
  std::optional<std::string> dos_state;
  std::optional<double> tcasc;
  std::optional<double> tmin_temp;
  std::optional<double> tmax_temp;
  std::optional<std::size_t> tpoints;
  bool log_temps = false;
  bool linear_temps = false;
  std::optional<std::size_t> bench_min;
  std::optional<std::size_t> bench_max;
  std::optional<std::size_t> bench_repeats;
  std::optional<std::string> workload;
  std::optional<std::string> mem_limit;
  std::optional<std::size_t> threads;
  std::optional<std::string> out;
};

/// Accepts plain byte counts or a K/M/G/T suffix (binary multiples).
std::uint64_t parse_bytes(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad memory limit '" + text + "'");
  }
  std::string unit = text.substr(pos);
  if (!unit.empty() && (unit.back() == 'B' || unit.back() == 'b')) unit.pop_back();
  if (unit.size() == 2 && (unit[1] == 'i' || unit[1] == 'I')) unit.pop_back();
  double scale = 1.0;
  if (unit.empty()) {
    scale = 1.0;
  } else if (unit == "K" || unit == "k") {
    scale = 1024.0;
  } else if (unit == "M" || unit == "m") {
    scale = 1024.0 * 1024.0;
  } else if (unit == "G" || unit == "g") {
    scale = 1024.0 * 1024.0 * 1024.0;
  } else if (unit == "T" || unit == "t") {
    scale = 1024.0 * 1024.0 * 1024.0 * 1024.0;
  } else {
    throw UsageError("bad memory unit in '" + text + "'");
  }
  if (!(v > 0.0)) throw UsageError("memory limit must be positive");
  return static_cast<std::uint64_t>(v * scale);
}

/// Defaults, then the config file, then explicit flags, then QRS_THREADS when
/// no thread count was given anywhere.
qrs::RunConfig resolve(const Flags& f) {
  try {
    qrs::RunConfig c;
    bool threads_set = false;
    if (f.config_file) {
      std::ifstream in(*f.config_file);
      if (!in) throw UsageError("cannot open config file " + *f.config_file);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config file " + *f.config_file + ": " + e.what());
      }
      threads_set = j.is_object() && j.contains("threads");
      c = qrs::apply_config_json(c, j);
    }
    if (f.net) c.network_path = *f.net;
    if (f.seed) c.seed = *f.seed;
    if (f.scenario) c.scenario = qrs::parse_scenario(*f.scenario);
    if (f.qubits) c.qubits = *f.qubits;
    if (f.depth) c.depth = *f.depth;
    if (f.restarts) c.restarts = *f.restarts;
    if (f.max_iters) c.max_evaluations = *f.max_iters;
    if (f.optimizer) c.optimizer = qrs::parse_optimizer(*f.optimizer);
    if (f.steps) c.steps = *f.steps;
    if (f.tmax) c.t_max = *f.tmax;
    if (f.pad) c.padding = *f.pad;
    if (f.dos_state) c.dos_state = qrs::parse_dos_state(*f.dos_state);
    if (f.tcasc) c.cascade_time = *f.tcasc;
    if (f.tmin_temp) c.temperatures.t_min = *f.tmin_temp;
    if (f.tmax_temp) c.temperatures.t_max = *f.tmax_temp;
    if (f.tpoints) c.temperatures.points = *f.tpoints;
    if (f.log_temps) c.temperatures.log_spaced = true;
    if (f.linear_temps) c.temperatures.log_spaced = false;
    if (f.bench_min) c.bench.n_min = *f.bench_min;
    if (f.bench_max) c.bench.n_max = *f.bench_max;
    if (f.bench_repeats) c.bench.repeats = *f.bench_repeats;
    if (f.workload) c.bench.workload = qrs::parse_workload(*f.workload);
    if (f.mem_limit) c.memory_limit = parse_bytes(*f.mem_limit);
    if (f.threads) {
      c.threads = *f.threads;
    } else if (!threads_set) {
      if (const char* env = std::getenv("QRS_THREADS"); env != nullptr && *env != '\0') {
        try {
          c.threads = std::stoul(env);
        } catch (const std::exception&) {
          throw UsageError(std::string("QRS_THREADS is not a number: ") + env);
        }
      }
    }
    if (f.out) c.out_dir = *f.out;
    c.validate();
    return c;
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void write_json(const qrs::RunConfig& c, const std::string& name, const Json& j) {
  const fs::path p = fs::path(c.out_dir) / name;
  qrs::write_file(p, qrs::dump(j));
  std::printf("wrote %s\n", p.string().c_str());
}

void write_text(const qrs::RunConfig& c, const std::string& name, const std::string& text) {
  const fs::path p = fs::path(c.out_dir) / name;
  qrs::write_file(p, text);
  std::printf("wrote %s\n", p.string().c_str());
}

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_file, "JSON config file (same shape as the echoed config)");
  app.add_option("--net", f.net, "network JSON file (default: generated fixture)");
  app.add_option("--seed", f.seed, "fixture and restart seed [42]");
  app.add_option("--scenario", f.scenario, "shock scenario {A|B|none} [A]")
      ->check(CLI::IsMember({"A", "B", "none"}));
  app.add_option("-n,--qubits", f.qubits, "simulated sub-network size [12]");
  app.add_option("--depth", f.depth, "ansatz depth D [3]");
  app.add_option("--restarts", f.restarts, "VQE restarts [5]");
  app.add_option("--max-iters", f.max_iters, "objective evaluations per restart [2000]");
  app.add_option("--optimizer", f.optimizer, "quadratic or cobyla [quadratic]")
      ->check(CLI::IsMember({"quadratic", "cobyla"}));
  app.add_option("--steps", f.steps, "Trotter steps N [32]");
  app.add_option("--tmax", f.tmax, "survival-series window t_max [10]");
  app.add_option("--pad", f.pad, "FFT zero-padding factor [8]");
  app.add_option("--dos-state", f.dos_state, "survival amplitude start: ground or stable [ground]")
      ->check(CLI::IsMember({"ground", "stable"}));
  app.add_option("--tcasc", f.tcasc, "cascade window [5]");
  app.add_option("--tmin", f.tmin_temp, "lowest temperature [0.01]");
  app.add_option("--tmax-temp", f.tmax_temp, "highest temperature [1e6]");
  app.add_option("--tpoints", f.tpoints, "temperature grid points [50]");
  app.add_flag("--log-temps", f.log_temps, "log-spaced temperature grid (default)");
  app.add_flag("--linear-temps", f.linear_temps, "linearly spaced temperature grid");
  app.add_option("--bench-min", f.bench_min, "smallest benchmark size [6]");
  app.add_option("--bench-max", f.bench_max, "largest benchmark size [16]");
  app.add_option("--bench-repeats", f.bench_repeats, "timed repeats per size [5]");
  app.add_option("--workload", f.workload, "energy_eval or trotter_step [energy_eval]")
      ->check(CLI::IsMember({"energy_eval", "trotter_step"}));
  app.add_option("--mem-limit", f.mem_limit, "statevector memory ceiling, e.g. 2G [2G]");
  app.add_option("--threads", f.threads, "worker threads (fallback: QRS_THREADS) [1]");
  app.add_option("-o,--out", f.out, "output directory [qrs_out]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supply-network risk analysis on a statevector simulator"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;
  add_flags(app, f);

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> fn) {
    sub->callback([&action, fn] { action = fn; });
  };

  auto* network = app.add_subcommand("network", "fixture network files");
  network->require_subcommand(1);
  on(network->add_subcommand("gen", "write the network JSON (-o names a file or a directory)"), [&] {
    auto c = resolve(f);
    qrs::Workspace ws(c);
    fs::path p = f.out ? fs::path(*f.out) : fs::path("network.json");
    if (p.extension() != ".json") p /= "network.json";
    qrs::save_network(ws.network(), p.string());
    std::printf("wrote %s: %zu nodes, %zu edges, mean coupling %.5f\n", p.string().c_str(),
                ws.network().size(), ws.network().edges.size(), ws.network().mean_coupling());
  });
  on(network->add_subcommand("show", "print a network summary"), [&] {
    qrs::Workspace ws(resolve(f));
    std::cout << qrs::dump(qrs::network_report(ws));
  });

  on(app.add_subcommand("exact", "exact ground energy, gap and spectrum (n <= 14)"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::exact_report(ws);
    write_json(c, "exact_report.json", j);
    std::printf("E0 = %.10f  gap = %.6f  multiplicity = %zu  levels = %zu\n", j["e0"].get<double>(),
                j["gap"].get<double>(), j["ground_multiplicity"].get<std::size_t>(), j["spectrum"].size());
  });

  auto* vqe = app.add_subcommand("vqe", "variational ground state");
  vqe->require_subcommand(1);
  on(vqe->add_subcommand("run", "one VQE run with restarts"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::vqe_report(ws, false);
    write_json(c, "vqe_report.json", j);
    std::printf("D = %zu, %zu parameters: E = %.10f, reference %.10f, error %.3e (%zu evaluations)\n", c.depth,
                j["parameters"].get<std::size_t>(), j["best_energy"].get<double>(),
                j["reference_energy"].get<double>(), j["error"].get<double>(),
                j["total_evaluations"].get<std::size_t>());
  });
  on(vqe->add_subcommand("depth-study", "VQE error and cost across ansatz depths"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::depth_study_report(ws);
    write_json(c, "depth_study.json", j);
    for (const auto& r : j["rows"]) {
      std::printf("D = %zu  params = %3zu  error = %.3e  evaluations = %zu\n", r["depth"].get<std::size_t>(),
                  r["parameters"].get<std::size_t>(), r["error"].get<double>(),
                  r["evaluations"].get<std::size_t>());
    }
  });

  on(app.add_subcommand("advantage", "per-node stress against the independent baseline"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::advantage_report(ws);
    write_json(c, "advantage_report.json", j);
    std::printf("%zu of %zu nodes exceed |dP| > %.2f (max %.4f at node %zu)\n", j["flagged"].size(),
                j["rows"].size(), c.advantage_threshold, j["max_abs_delta"].get<double>(),
                j["max_node"].get<std::size_t>());
  });

  auto* policy = app.add_subcommand("policy", "counterfactual policy screening");
  policy->require_subcommand(1);
  auto print_scores = [](const Json& j) {
    for (const auto& s : j["scores"]) {
      std::printf("%zu  %-18s  g = %.6f  dE = %+.6f\n", s["rank"].get<std::size_t>(),
                  s["name"].get<std::string>().c_str(), s["gradient"].get<double>(),
                  s["delta_e_first_order"].get<double>());
    }
    std::printf("%zu expectation calls, speedup %.1fx\n",
                j["instrumentation"]["expectation_calls"].get<std::size_t>(),
                j["instrumentation"]["speedup_factor"].get<double>());
  };
  on(policy->add_subcommand("screen", "commutator gradients and first-order energy shifts"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::policy_report(ws, false);
    write_json(c, "policy_report.json", j);
    print_scores(j);
  });
  on(policy->add_subcommand("heatmap", "re-solve every policy and record node stress"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const Json j = qrs::policy_report(ws, true);
    write_json(c, "policy_heatmap.json", j);
    print_scores(j);
  });

  auto* dos = app.add_subcommand("dos", "density of states from the survival amplitude");
  dos->require_subcommand(1);
  on(dos->add_subcommand("run", "Trotter series and windowed FFT"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const auto a = qrs::dos_stage(ws);
    write_text(c, "dos_series.csv", a.series_csv);
    write_text(c, "dos_density.csv", a.density_csv);
    write_json(c, "dos_report.json", a.report);
    std::printf("|A(0)| = %.12f  |A(t_max)| = %.6f  Nyquist = %.4f (width %.4f, %s)\n",
                a.report["abs_a0"].get<double>(), a.report["abs_a_tmax"].get<double>(),
                a.report["nyquist"]["nyquist"].get<double>(), a.report["nyquist"]["spectral_width"].get<double>(),
                a.report["nyquist"]["pass"].get<bool>() ? "pass" : "fail");
  });

  on(app.add_subcommand("tailrisk", "Boltzmann catastrophe probability over a temperature grid"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const auto a = qrs::tailrisk_stage(ws);
    write_text(c, "tailrisk.csv", a.exact_csv);
    write_json(c, "tailrisk_report.json", a.report);
    const Json& e = a.report["exact"];
    std::printf("E_cutoff = %.4f  levels above = %.4f%%  P_cat(T=1) = %.6e\n", e["e_cutoff"].get<double>(),
                100.0 * e["count_fraction"].get<double>(), e["p_cat_t1"].get<double>());
  });

  on(app.add_subcommand("cascade", "stress propagation from the all-stable state"), [&] {
    const auto c = resolve(f);
    qrs::Workspace ws(c);
    const auto a = qrs::cascade_stage(ws);
    write_text(c, "cascade.csv", a.csv);
    write_json(c, "cascade_report.json", a.report);
    std::printf("final mean stress at t = %.2f: %.6f\n", c.cascade_time, a.report["final_mean_stress"].get<double>());
  });

  auto* bench = app.add_subcommand("bench", "runtime scaling");
  bench->require_subcommand(1);
  on(bench->add_subcommand("scale", "time one workload call per size and fit t = a 2^{r (n - n0)}"), [&] {
    const auto c = resolve(f);
    const Json j = qrs::bench_report(c);
    write_json(c, "bench_report.json", j);
    const Json& fit = j["timing"]["fit"];
    std::printf("r = %.4f  R^2 = %.4f  t(30) = %.4g h  t(40) = %.4g h\n", fit["r"].get<double>(),
                fit["r_squared"].get<double>(), j["timing"]["extrapolations_hours"]["30"].get<double>(),
                j["timing"]["extrapolations_hours"]["40"].get<double>());
  });

  auto* report = app.add_subcommand("report", "report bundles");
  report->require_subcommand(1);
  int bundle_status = 0;
  on(report->add_subcommand("all", "run every stage and write the bundle"), [&] {
    const auto c = resolve(f);
    const auto r = qrs::report_bundle(c);
    for (const auto& w : r.written) std::printf("wrote %s\n", (fs::path(c.out_dir) / w).string().c_str());
    for (const auto& e : r.failed) std::fprintf(stderr, "stage failed: %s\n", e.c_str());
    if (!r.failed.empty()) bundle_status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  try {
    action();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n\n%s", e.what(), app.help().c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return bundle_status;
}
