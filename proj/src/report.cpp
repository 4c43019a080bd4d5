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

#include "qrs/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qrs {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Reference values from the 30/40-qubit production run. Echoed next to the
// desk-scale results; never compared against them.
Json reference_block() {
  return Json{{"e0_30q", -54.296},
              {"e0_scaled_40q", -72.395},
              {"advantage_nodes_40q", 14},
              {"subsidy_gradient", 3.764},
              {"pure_z_gradients", {0.003, 0.002}},
              {"screening_speedup", 287},
              {"nyquist", 1.550},
              {"abs_a_tmax", 0.850},
              {"e_cutoff_40q", -41.347},
              {"tail_risk_t1", 0.00238},
              {"final_mean_stress_40q", 0.419},
              {"scaling_r", 1.000},
              {"scaling_r_squared", 1.000},
              {"extrapolated_hours_40q", 369582},
              {"compression_ratio_40q", 9.2e9}};
}

std::vector<std::size_t> bench_sizes(const BenchRange& b) {
  std::vector<std::size_t> s;
  for (std::size_t n = b.n_min; n <= b.n_max; ++n) s.push_back(n);
  return s;
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) ==
        allowed.end()) {
      throw std::invalid_argument("unknown config key '" + k + "' in " + where);
    }
  }
}

}  // namespace

DosState parse_dos_state(std::string_view name) {
  if (name == "ground") return DosState::ground;
  if (name == "stable") return DosState::stable;
  throw std::invalid_argument("unknown DOS initial state '" + std::string(name) +
                              "' (expected ground or stable)");
}

std::string_view to_string(DosState s) { return s == DosState::ground ? "ground" : "stable"; }

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (qubits < 1) fail("qubit count must be positive");
  if (depth < 1) fail("ansatz depth must be at least 1");
  if (restarts < 1) fail("restarts must be at least 1");
  if (max_evaluations < 1) fail("evaluation cap must be positive");
  for (std::size_t d : study_depths) {
    if (d < 1) fail("study depths must be at least 1");
  }
  if (steps < 2) fail("trotter steps must be at least 2");
  if (!(t_max > 0.0)) fail("t_max must be positive");
  if (padding < 1) fail("padding factor must be at least 1");
  if (!(cascade_time > 0.0)) fail("cascade time must be positive");
  if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0)) fail("cutoff fraction must lie in (0, 1)");
  if (!(advantage_threshold >= 0.0)) fail("advantage threshold must be nonnegative");
  if (!(mean_coupling_reference > 0.0)) fail("mean coupling must be positive");
  if (!(temperatures.t_min > 0.0) || !(temperatures.t_max > temperatures.t_min)) {
    fail("temperature grid needs 0 < tmin < tmax");
  }
  if (temperatures.points < 2) fail("temperature grid needs at least 2 points");
  if (bench.n_min < 1 || bench.n_max < bench.n_min + 2) fail("bench range needs at least 3 sizes");
  if (bench.repeats < 3) fail("bench repeats must be at least 3");
  if (memory_limit == 0) fail("memory limit must be positive");
  if (threads < 1) fail("thread count must be at least 1");
}

Json to_json(const RunConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["net"] = c.network_path ? Json(*c.network_path) : Json(nullptr);
  j["scenario"] = std::string(to_string(c.scenario));
  j["qubits"] = c.qubits;
  j["depth"] = c.depth;
  j["restarts"] = c.restarts;
  j["max_iters"] = c.max_evaluations;
  j["optimizer"] = std::string(to_string(c.optimizer));
  j["study_depths"] = c.study_depths;
  j["trotter"] = {{"steps", c.steps}, {"t_max", c.t_max}, {"padding", c.padding}};
  j["dos_state"] = std::string(to_string(c.dos_state));
  j["cascade_time"] = c.cascade_time;
  j["cutoff_fraction"] = c.cutoff_fraction;
  j["advantage_threshold"] = c.advantage_threshold;
  j["mean_coupling"] = c.mean_coupling_reference;
  j["temperatures"] = {{"min", c.temperatures.t_min},
                       {"max", c.temperatures.t_max},
                       {"points", c.temperatures.points},
                       {"log", c.temperatures.log_spaced}};
  j["bench"] = {{"min", c.bench.n_min},
                {"max", c.bench.n_max},
                {"repeats", c.bench.repeats},
                {"workload", std::string(to_string(c.bench.workload))}};
  j["mem_limit"] = c.memory_limit;
  j["threads"] = c.threads;
  j["out"] = c.out_dir;
  return j;
}

RunConfig apply_config_json(RunConfig c, const Json& j) {
  reject_unknown(j,
                 {"seed", "net", "scenario", "qubits", "depth", "restarts", "max_iters", "optimizer",
                  "study_depths", "trotter", "dos_state", "cascade_time", "cutoff_fraction",
                  "advantage_threshold", "mean_coupling", "temperatures", "bench", "mem_limit",
                  "threads", "out"},
                 "config");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("net")) {
    if (j["net"].is_null()) {
      c.network_path.reset();
    } else {
      c.network_path = get_as<std::string>(j, "net");
    }
  }
  if (j.contains("scenario")) c.scenario = parse_scenario(get_as<std::string>(j, "scenario"));
  if (j.contains("qubits")) c.qubits = get_as<std::size_t>(j, "qubits");
  if (j.contains("depth")) c.depth = get_as<std::size_t>(j, "depth");
  if (j.contains("restarts")) c.restarts = get_as<std::size_t>(j, "restarts");
  if (j.contains("max_iters")) c.max_evaluations = get_as<std::size_t>(j, "max_iters");
  if (j.contains("optimizer")) c.optimizer = parse_optimizer(get_as<std::string>(j, "optimizer"));
  if (j.contains("study_depths")) c.study_depths = get_as<std::vector<std::size_t>>(j, "study_depths");
  if (j.contains("trotter")) {
    const Json& t = j["trotter"];
    reject_unknown(t, {"steps", "t_max", "padding"}, "trotter");
    if (t.contains("steps")) c.steps = get_as<std::size_t>(t, "steps");
    if (t.contains("t_max")) c.t_max = get_as<double>(t, "t_max");
    if (t.contains("padding")) c.padding = get_as<std::size_t>(t, "padding");
  }
  if (j.contains("dos_state")) c.dos_state = parse_dos_state(get_as<std::string>(j, "dos_state"));
  if (j.contains("cascade_time")) c.cascade_time = get_as<double>(j, "cascade_time");
  if (j.contains("cutoff_fraction")) c.cutoff_fraction = get_as<double>(j, "cutoff_fraction");
  if (j.contains("advantage_threshold")) {
    c.advantage_threshold = get_as<double>(j, "advantage_threshold");
  }
  if (j.contains("mean_coupling")) c.mean_coupling_reference = get_as<double>(j, "mean_coupling");
  if (j.contains("temperatures")) {
    const Json& t = j["temperatures"];
    reject_unknown(t, {"min", "max", "points", "log"}, "temperatures");
    if (t.contains("min")) c.temperatures.t_min = get_as<double>(t, "min");
    if (t.contains("max")) c.temperatures.t_max = get_as<double>(t, "max");
    if (t.contains("points")) c.temperatures.points = get_as<std::size_t>(t, "points");
    if (t.contains("log")) c.temperatures.log_spaced = get_as<bool>(t, "log");
  }
  if (j.contains("bench")) {
    const Json& b = j["bench"];
    reject_unknown(b, {"min", "max", "repeats", "workload"}, "bench");
    if (b.contains("min")) c.bench.n_min = get_as<std::size_t>(b, "min");
    if (b.contains("max")) c.bench.n_max = get_as<std::size_t>(b, "max");
    if (b.contains("repeats")) c.bench.repeats = get_as<std::size_t>(b, "repeats");
    if (b.contains("workload")) c.bench.workload = parse_workload(get_as<std::string>(b, "workload"));
  }
  if (j.contains("mem_limit")) c.memory_limit = get_as<std::uint64_t>(j, "mem_limit");
  if (j.contains("threads")) c.threads = get_as<std::size_t>(j, "threads");
  if (j.contains("out")) c.out_dir = get_as<std::string>(j, "out");
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  return apply_config_json(std::move(base), j);
}

// ---------------------------------------------------------------------------
// Workspace

struct Workspace::Cache {
  std::optional<SupplyNetwork> network;
  std::optional<SupplyNetwork> sub;
  std::optional<PauliSum> h;
  std::optional<double> reference;
  bool reference_exact = false;
  std::optional<Spectrum> spectrum;
  std::optional<VqeResult> vqe;
  double vqe_seconds = 0.0;
};

Workspace::Workspace(RunConfig config) : config_(std::move(config)), cache_(std::make_unique<Cache>()) {
  config_.validate();
  set_memory_limit(config_.memory_limit);
}

Workspace::~Workspace() = default;

const SupplyNetwork& Workspace::network() {
  if (!cache_->network) {
    if (config_.network_path) {
      SupplyNetwork net = load_network(*config_.network_path);
      // Scenarios are defined on the 40-node layout; other files keep their shocks.
      if (net.size() == kFixtureNodes) net = apply_scenario(std::move(net), config_.scenario);
      cache_->network = std::move(net);
    } else {
      cache_->network = apply_scenario(generate_fixture(config_.seed), config_.scenario);
    }
    if (config_.qubits > cache_->network->size()) {
      throw std::invalid_argument("requested " + std::to_string(config_.qubits) +
                                  " qubits but the network has " +
                                  std::to_string(cache_->network->size()) + " nodes");
    }
  }
  return *cache_->network;
}

const SupplyNetwork& Workspace::subnetwork() {
  if (!cache_->sub) cache_->sub = qrs::subnetwork(network(), config_.qubits);
  return *cache_->sub;
}

const PauliSum& Workspace::hamiltonian() {
  if (!cache_->h) cache_->h = build_hamiltonian(subnetwork());
  return *cache_->h;
}

double Workspace::reference_energy() {
  if (!cache_->reference) {
    const std::size_t n = config_.qubits;
    check_memory(statevector_bytes(n));
    if (n <= kDenseQubitCap) {
      cache_->reference = exact_ground_state(hamiltonian(), n).energy;
      cache_->reference_exact = true;
    } else if (n <= kIterativeQubitCap) {
      cache_->reference = ground_state_iterative(hamiltonian(), n).energy;
      cache_->reference_exact = true;
    } else {
      cache_->reference = vqe().best_energy;
      cache_->reference_exact = false;
    }
  }
  return *cache_->reference;
}

bool Workspace::reference_is_exact() {
  reference_energy();
  return cache_->reference_exact;
}

const Spectrum& Workspace::exact_spectrum() {
  if (!cache_->spectrum) cache_->spectrum = qrs::exact_spectrum(hamiltonian(), config_.qubits);
  return *cache_->spectrum;
}

const VqeResult& Workspace::vqe() {
  if (!cache_->vqe) {
    VqeOptions o;
    o.restarts = config_.restarts;
    o.seed = config_.seed;
    o.max_evaluations = config_.max_evaluations;
    o.optimizer = config_.optimizer;
    o.threads = config_.threads;
    const auto t0 = clock_type::now();
    cache_->vqe = vqe_minimize(hamiltonian(), {config_.qubits, config_.depth}, o);
    cache_->vqe_seconds = seconds_since(t0);
  }
  return *cache_->vqe;
}

double Workspace::vqe_seconds() {
  vqe();
  return cache_->vqe_seconds;
}

// ---------------------------------------------------------------------------
// Stages

Json network_report(Workspace& ws) {
  const SupplyNetwork& net = ws.network();
  Json j;
  j["config"] = to_json(ws.config());
  j["nodes"] = net.size();
  j["edges"] = net.edges.size();
  j["mean_coupling"] = net.mean_coupling();
  Json tiers = Json::array();
  for (int t = 0; t < static_cast<int>(kTierCount); ++t) {
    tiers.push_back(std::count_if(net.nodes.begin(), net.nodes.end(),
                                  [t](const SupplyNode& s) { return s.tier == t; }));
  }
  j["tier_sizes"] = tiers;
  Json shocks = Json::array();
  for (const auto& [k, lambda] : net.shocks) shocks.push_back({{"node", k}, {"lambda", lambda}});
  j["shocks"] = shocks;
  return j;
}

Json exact_report(Workspace& ws) {
  const auto t0 = clock_type::now();
  const Spectrum& s = ws.exact_spectrum();
  Json j;
  j["config"] = to_json(ws.config());
  j["qubits"] = ws.config().qubits;
  j["e0"] = s.ground_energy();
  j["gap"] = s.gap();
  j["ground_multiplicity"] = s.ground_multiplicity;
  j["e_max"] = s.max_energy();
  j["spectrum"] = s.energies;
  j["timing"] = {{"seconds", seconds_since(t0)}};
  return j;
}

Json depth_study_report(Workspace& ws) {
  const RunConfig& c = ws.config();
  VqeOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed;
  o.max_evaluations = c.max_evaluations;
  o.optimizer = c.optimizer;
  o.threads = c.threads;
  const auto study = depth_study(ws.hamiltonian(), c.qubits, c.study_depths, o);
  Json rows = Json::array(), times = Json::array();
  for (const auto& r : study.rows) {
    rows.push_back({{"depth", r.depth},
                    {"parameters", r.parameter_count},
                    {"energy", r.energy},
                    {"error", r.error},
                    {"evaluations", r.evaluations}});
    times.push_back({{"depth", r.depth}, {"seconds", r.runtime_seconds}});
  }
  Json j;
  j["config"] = to_json(c);
  j["exact_energy"] = study.exact_energy;
  j["rows"] = rows;
  j["timing"] = {{"rows", times}, {"runtime_monotone", study.runtime_monotone}};
  return j;
}

Json advantage_report(Workspace& ws) {
  const RunConfig& c = ws.config();
  const auto baseline = classical_baseline(ws.subnetwork(), BaselineMode::gibbs_independent, 1.0);
  const auto adv = quantum_advantage(ws.vqe().ground_state, baseline, c.advantage_threshold);
  Json rows = Json::array();
  for (const auto& r : adv.rows) {
    rows.push_back({{"node", r.node}, {"p_vqe", r.p_vqe}, {"p_mc", r.p_mc}, {"delta", r.delta}});
  }
  Json j;
  j["config"] = to_json(c);
  j["baseline"] = std::string(to_string(BaselineMode::gibbs_independent));
  j["baseline_temperature"] = 1.0;
  j["threshold"] = adv.threshold;
  j["rows"] = rows;
  j["flagged"] = adv.flagged;
  j["max_abs_delta"] = adv.max_abs_delta;
  j["max_node"] = adv.max_node;
  return j;
}

Json vqe_report(Workspace& ws, bool include_depth_study) {
  const RunConfig& c = ws.config();
  const VqeResult& r = ws.vqe();
  const double e_ref = ws.reference_energy();
  const AnsatzConfig ansatz{c.qubits, c.depth};

  Json j;
  j["config"] = to_json(c);
  j["network"] = {{"nodes", ws.network().size()},
                  {"edges", ws.network().edges.size()},
                  {"mean_coupling", ws.network().mean_coupling()}};
  j["qubits"] = c.qubits;
  j["depth"] = c.depth;
  j["parameters"] = ansatz.parameter_count();
  j["reference_energy"] = e_ref;
  j["reference_exact"] = ws.reference_is_exact();
  j["best_energy"] = r.best_energy;
  j["error"] = r.best_energy - e_ref;
  j["best_restart"] = r.best_restart;
  j["total_evaluations"] = r.total_evaluations();
  Json restarts = Json::array();
  for (const auto& t : r.traces) {
    restarts.push_back({{"seed", t.seed},
                        {"evaluations", t.evaluations},
                        {"final_energy", t.final_energy},
                        {"error", t.final_energy - e_ref},
                        {"stop", std::string(to_string(t.reason))}});
  }
  j["restarts"] = restarts;
  j["best_params"] = r.best_params;
  j["scaled_energy_40q"] = scale_energy(r.best_energy, c.qubits, kFixtureNodes);
  j["compression_ratio"] = compression_ratio(c.qubits, ansatz.parameter_count());
  Json stress = Json::array();
  for (std::size_t q = 0; q < c.qubits; ++q) stress.push_back(stress_probability(r.ground_state, q));
  j["ground_stress"] = stress;

  const std::size_t top = std::min<std::size_t>(c.qubits, 12);
  if (top >= 6) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 4; n <= top; ++n) sizes.push_back(n);
    const auto fit = energy_density_fit(ws.network(), sizes);
    Json rows = Json::array();
    for (const auto& d : fit.rows) rows.push_back({{"n", d.n}, {"energy", d.energy}, {"density", d.density}});
    j["energy_density"] = {{"slope", fit.fit.slope},
                           {"intercept", fit.fit.intercept},
                           {"r_squared", fit.fit.r_squared},
                           {"mean_density", fit.mean_density},
                           {"max_relative_deviation", fit.max_relative_deviation},
                           {"rows", rows}};
  }
  j["advantage"] = advantage_report(ws);
  j["advantage"].erase("config");
  Json timing = {{"vqe_seconds", ws.vqe_seconds()}};
  if (include_depth_study && c.qubits <= kDenseQubitCap && !c.study_depths.empty()) {
    Json study = depth_study_report(ws);
    timing["depth_study"] = study["timing"];
    study.erase("timing");
    study.erase("config");
    j["depth_study"] = study;
  }
  j["reference_values"] = reference_block();
  j["timing"] = timing;
  return j;
}

Json policy_report(Workspace& ws, bool include_heatmap) {
  const RunConfig& c = ws.config();
  const VqeResult& r = ws.vqe();
  const auto policies = canonical_policies(ws.network());
  const double e0 = expectation(ws.hamiltonian(), r.ground_state);
  const std::size_t run_evaluations = r.traces.at(r.best_restart).evaluations;
  const auto screen =
      screen_policies(r.ground_state, e0, ws.hamiltonian(), policies, c.qubits, kFixtureNodes, run_evaluations);

  std::optional<Heatmap> map;
  if (include_heatmap) {
    VqeOptions o;
    o.restarts = c.restarts;
    o.seed = c.seed;
    o.max_evaluations = c.max_evaluations;
    o.optimizer = c.optimizer;
    o.threads = c.threads;
    map = policy_heatmap(ws.hamiltonian(), policies, c.qubits, {c.qubits, c.depth}, o);
  }

  Json scores = Json::array();
  for (const auto& s : screen.scores) {
    Json row{{"name", s.name},
             {"gradient", s.gradient},
             {"rank", s.rank},
             {"energy", s.energy},
             {"delta_e_first_order", s.delta_e_first_order},
             {"delta_e_scaled", s.delta_e_scaled},
             {"dropped_terms", s.dropped_terms}};
    if (map) {
      for (const auto& h : map->rows) {
        if (h.name == s.name) row["delta_e_reoptimized"] = h.delta_e_reoptimized;
      }
    }
    scores.push_back(row);
  }
  Json j;
  j["config"] = to_json(c);
  j["qubits"] = c.qubits;
  j["state"] = "vqe";
  j["e0"] = e0;
  j["scores"] = scores;
  j["instrumentation"] = {{"expectation_calls", screen.instrumentation.expectation_calls},
                          {"policies", screen.instrumentation.policies},
                          {"vqe_evaluations", run_evaluations},
                          {"vqe_iterations_equiv", screen.instrumentation.vqe_iterations_equiv},
                          {"speedup_factor", screen.instrumentation.speedup_factor}};
  j["warnings"] = screen.warnings;
  if (map) {
    Json rows = Json::array();
    for (const auto& h : map->rows) {
      rows.push_back({{"name", h.name},
                      {"ground_energy", h.ground_energy},
                      {"delta_e_reoptimized", h.delta_e_reoptimized},
                      {"multiplicity", h.multiplicity},
                      {"stress", h.stress}});
    }
    j["heatmap"] = {{"solver", map->solver}, {"baseline_energy", map->baseline_energy}, {"rows", rows}};
  }
  j["reference_values"] = reference_block();
  return j;
}

DosArtifacts dos_stage(Workspace& ws) {
  const RunConfig& c = ws.config();
  const std::size_t n = c.qubits;
  const double shift = ws.reference_energy();
  const Statevector psi0 =
      c.dos_state == DosState::ground ? ws.vqe().ground_state : Statevector::basis(n, 0);
  TrotterConfig tc;
  tc.steps = c.steps;
  tc.t_max = c.t_max;
  tc.energy_shift = shift;
  tc.padding_factor = c.padding;
  const auto t0 = clock_type::now();
  const DosResult dos = dos_reconstruct(survival_series(psi0, ws.hamiltonian(), tc), Window::hann);
  const double secs = seconds_since(t0);

  double width = dos.spectral_width_estimate;
  std::string width_source = "dos";
  if (n <= kDenseQubitCap) {
    const Spectrum& s = ws.exact_spectrum();
    width = (s.max_energy() - s.ground_energy()) / (2.0 * std::numbers::pi);
    width_source = "exact";
  }
  const auto nyq = nyquist_check(tc, width);
  const auto bound = trotter_error_report(split_commuting(ws.hamiltonian()), tc);
  const auto peak = std::max_element(dos.density.begin(), dos.density.end()) - dos.density.begin();

  DosArtifacts out;
  Json& j = out.report;
  j["config"] = to_json(c);
  j["initial_state"] = std::string(to_string(c.dos_state));
  j["energy_shift"] = shift;
  j["dt"] = dos.dt;
  j["steps"] = c.steps;
  j["padding_factor"] = dos.padding_factor;
  j["window"] = std::string(to_string(dos.window));
  j["abs_a0"] = std::abs(dos.amplitudes.front());
  j["abs_a_tmax"] = std::abs(dos.amplitudes.back());
  j["nyquist"] = {{"nyquist", nyq.nyquist},
                  {"spectral_width", nyq.spectral_width},
                  {"width_source", width_source},
                  {"pass", nyq.pass}};
  j["peak_energy"] = dos.energy_grid[static_cast<std::size_t>(peak)];
  j["trotter_bound"] = {{"dt", bound.dt},
                        {"commutator_bound", bound.commutator_bound},
                        {"per_step", bound.per_step},
                        {"total", bound.total}};
  j["timing"] = {{"seconds", secs}};

  std::string series = "t,re_A,im_A,abs_A\n";
  for (std::size_t k = 0; k < dos.times.size(); ++k) {
    const Complex a = dos.amplitudes[k];
    series += num(dos.times[k]) + "," + num(a.real()) + "," + num(a.imag()) + "," + num(std::abs(a)) + "\n";
  }
  std::string density = "energy,density\n";
  for (std::size_t k = 0; k < dos.energy_grid.size(); ++k) {
    density += num(dos.energy_grid[k]) + "," + num(dos.density[k]) + "\n";
  }
  out.series_csv = std::move(series);
  out.density_csv = std::move(density);
  out.result = dos;
  return out;
}

namespace {

std::string tail_csv(const TailRiskCurve& t) {
  std::string s = "T,sigma_impl,p_cat\n";
  for (std::size_t k = 0; k < t.temperatures.size(); ++k) {
    s += num(t.temperatures[k]) + "," + num(t.vix_equivalents[k]) + "," + num(t.p_cat[k]) + "\n";
  }
  return s;
}

Json tail_summary(const TailRiskCurve& t, double p_cat_t1) {
  return Json{{"source", t.source == SpectrumSource::exact ? "exact" : "dos"},
              {"e_ground", t.e_ground},
              {"e_max", t.e_max},
              {"e_cutoff", t.e_cutoff},
              {"count_fraction", t.count_fraction},
              {"p_cat_t1", p_cat_t1},
              {"p_cat_min_t", t.p_cat.front()},
              {"p_cat_max_t", t.p_cat.back()}};
}

}  // namespace

TailRiskArtifacts tailrisk_stage(Workspace& ws, const DosResult* dos) {
  const RunConfig& c = ws.config();
  const auto temps = temperature_grid(c.temperatures.t_min, c.temperatures.t_max, c.temperatures.points,
                                      c.temperatures.log_spaced);
  const double one[] = {1.0};
  TailRiskArtifacts out;
  Json& j = out.report;
  j["config"] = to_json(c);
  j["mean_coupling"] = c.mean_coupling_reference;
  j["network_mean_coupling"] = ws.network().mean_coupling();
  j["cutoff_fraction"] = c.cutoff_fraction;
  const Spectrum& s = ws.exact_spectrum();
  const auto curve = boltzmann_tail(s, c.cutoff_fraction, temps, c.mean_coupling_reference);
  const double t1 = boltzmann_tail(s, c.cutoff_fraction, one, c.mean_coupling_reference).p_cat[0];
  j["exact"] = tail_summary(curve, t1);
  out.exact_csv = tail_csv(curve);
  if (dos != nullptr) {
    const Spectrum ds = spectrum_from_dos(*dos);
    const auto dcurve = boltzmann_tail(ds, c.cutoff_fraction, temps, c.mean_coupling_reference);
    const double d1 = boltzmann_tail(ds, c.cutoff_fraction, one, c.mean_coupling_reference).p_cat[0];
    j["dos"] = tail_summary(dcurve, d1);
    out.dos_csv = tail_csv(dcurve);
  }
  return out;
}

CascadeArtifacts cascade_stage(Workspace& ws) {
  const RunConfig& c = ws.config();
  const auto trace = cascade_simulate(ws.subnetwork(), c.cascade_time, c.steps);
  CascadeArtifacts out;
  Json& j = out.report;
  j["config"] = to_json(c);
  j["snapshot_times"] = trace.snapshot_times;
  j["substeps"] = trace.substeps;
  Json tiers = Json::array();
  for (const auto& row : trace.tier_means) {
    Json r = Json::array();
    for (double v : row) r.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
    tiers.push_back(r);
  }
  j["tier_means"] = tiers;
  j["final_mean_stress"] = trace.final_mean_stress;

  std::string csv = "t";
  for (std::size_t q = 0; q < c.qubits; ++q) csv += ",node_" + std::to_string(q);
  csv += "\n";
  for (std::size_t k = 0; k < trace.snapshot_times.size(); ++k) {
    csv += num(trace.snapshot_times[k]);
    for (double v : trace.per_node_stress[k]) csv += "," + num(v);
    csv += "\n";
  }
  out.csv = std::move(csv);
  return out;
}

Json bench_report(const RunConfig& c) {
  c.validate();
  set_memory_limit(c.memory_limit);
  const auto sizes = bench_sizes(c.bench);
  BenchOptions o;
  o.repeats = c.bench.repeats;
  o.seed = c.seed;
  o.depth = c.depth;
  SupplyNetwork net = c.network_path ? load_network(*c.network_path) : generate_fixture(c.seed);
  if (net.size() == kFixtureNodes) net = apply_scenario(std::move(net), c.scenario);
  if (c.bench.n_max > net.size()) throw std::invalid_argument("bench range exceeds the network size");
  const auto samples = run_benchmarks(net, sizes, c.bench.workload, o);
  const auto fit = fit_exponential(samples);

  const std::size_t table_sizes[] = {1, 20, 30, 40};
  Json memory = Json::array();
  for (const auto& row : memory_table(table_sizes)) {
    memory.push_back({{"n", row.n},
                      {"amplitudes", row.amplitudes},
                      {"bytes", row.bytes},
                      {"decimal", row.human_decimal},
                      {"binary", row.human_binary}});
  }
  Json measured = Json::array();
  for (const auto& s : samples) {
    measured.push_back({{"n", s.n}, {"wall_seconds", s.wall_seconds}, {"repeats", s.repeats}, {"batch", s.batch}});
  }

  Json j;
  j["config"] = to_json(c);
  j["workload"] = std::string(to_string(c.bench.workload));
  j["sizes"] = sizes;
  j["memory_table"] = memory;
  j["compression_ratio_40q_120"] = compression_ratio(40, 120);
  j["reference_values"] = reference_block();
  j["timing"] = {{"samples", measured},
                 {"fit", {{"a", fit.a}, {"r", fit.r}, {"n0", fit.n0}, {"r_squared", fit.r_squared}}},
                 {"extrapolations_hours", {{"30", fit.predict_hours(30)}, {"40", fit.predict_hours(40)}}}};
  return j;
}

// ---------------------------------------------------------------------------
// Files

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Json strip_timing(Json j) {
  if (j.is_object()) j.erase("timing");
  return j;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

BundleResult report_bundle(const RunConfig& config) {
  Workspace ws(config);
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  BundleResult result;
  std::ostringstream md, timing;
  md << "# Supply-network risk report\n\n";
  md << "Network seed " << config.seed << ", scenario " << to_string(config.scenario) << ", "
     << config.qubits << " simulated qubits, ansatz depth " << config.depth << ", " << config.restarts
     << " restarts.\n\n";
  timing << "## Timing\n\n";

  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    result.written.push_back(name);
  };
  auto stage = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      result.failed.push_back(name + ": " + e.what());
      md << "**Stage " << name << " failed:** " << e.what() << "\n\n";
    }
  };

  stage("vqe", [&] {
    const Json j = vqe_report(ws);
    emit("vqe_report.json", dump(j));
    md << "## Ground state\n\n";
    md << "- VQE energy " << fmt("%.10f", j["best_energy"].get<double>()) << " against reference "
       << fmt("%.10f", j["reference_energy"].get<double>()) << " ("
       << (j["reference_exact"].get<bool>() ? "exact" : "variational") << "), error "
       << fmt("%.3e", j["error"].get<double>()) << "\n";
    md << "- Scaled to 40 nodes: " << fmt("%.4f", j["scaled_energy_40q"].get<double>()) << "\n";
    md << "- Optimizer evaluations: " << j["total_evaluations"].get<std::size_t>() << " over "
       << config.restarts << " restarts\n";
    if (j.contains("energy_density")) {
      const Json& d = j["energy_density"];
      md << "- Energy density fit: slope " << fmt("%.4f", d["slope"].get<double>()) << ", R^2 "
         << fmt("%.4f", d["r_squared"].get<double>()) << ", max density deviation "
         << fmt("%.2f%%", 100.0 * d["max_relative_deviation"].get<double>()) << "\n";
    }
    if (j.contains("depth_study")) {
      double worst = 0.0;
      for (const auto& r : j["depth_study"]["rows"]) worst = std::max(worst, std::abs(r["error"].get<double>()));
      md << "- Depth study worst error: " << fmt("%.3e", worst) << "\n";
    }
    md << "- Advantage nodes (|dP| > " << config.advantage_threshold
       << "): " << j["advantage"]["flagged"].size() << "\n\n";
    timing << "- VQE: " << fmt("%.2f s", j["timing"]["vqe_seconds"].get<double>()) << "\n";
  });

  stage("policy", [&] {
    const Json j = policy_report(ws);
    emit("policy_report.json", dump(j));
    md << "## Policy screening\n\n| policy | gradient | rank | dE first order | dE re-optimized |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& s : j["scores"]) {
      md << "| " << s["name"].get<std::string>() << " | " << fmt("%.6f", s["gradient"].get<double>()) << " | "
         << s["rank"].get<std::size_t>() << " | " << fmt("%.6f", s["delta_e_first_order"].get<double>())
         << " | "
         << (s.contains("delta_e_reoptimized") ? fmt("%.6f", s["delta_e_reoptimized"].get<double>()) : "-")
         << " |\n";
    }
    const Json& inst = j["instrumentation"];
    md << "\nScreening used " << inst["expectation_calls"].get<std::size_t>() << " expectation calls for "
       << inst["policies"].get<std::size_t>() << " policies; re-running VQE per policy would cost "
       << inst["vqe_iterations_equiv"].get<std::size_t>() << " optimizer evaluations (speedup "
       << fmt("%.1f", inst["speedup_factor"].get<double>()) << "x).\n\n";
  });

  std::optional<DosResult> dos_for_tail;
  stage("dos", [&] {
    const auto a = dos_stage(ws);
    emit("dos_series.csv", a.series_csv);
    emit("dos_density.csv", a.density_csv);
    emit("dos_report.json", dump(a.report));
    const Json& j = a.report;
    md << "## Spectral reconstruction\n\n";
    md << "- |A(0)| = " << fmt("%.12f", j["abs_a0"].get<double>()) << ", |A(t_max)| = "
       << fmt("%.6f", j["abs_a_tmax"].get<double>()) << "\n";
    md << "- Nyquist 1/(2 dt) = " << fmt("%.4f", j["nyquist"]["nyquist"].get<double>())
       << " against spectral width " << fmt("%.4f", j["nyquist"]["spectral_width"].get<double>()) << " ("
       << (j["nyquist"]["pass"].get<bool>() ? "no aliasing" : "aliased") << ")\n";
    md << "- Trotter bound per step " << fmt("%.4e", j["trotter_bound"]["per_step"].get<double>())
       << ", total " << fmt("%.4e", j["trotter_bound"]["total"].get<double>()) << "\n\n";
    timing << "- DOS series: " << fmt("%.2f s", j["timing"]["seconds"].get<double>()) << "\n";
    dos_for_tail = a.result;
  });

  stage("tailrisk", [&] {
    const auto a = tailrisk_stage(ws, dos_for_tail ? &*dos_for_tail : nullptr);
    emit("tailrisk.csv", a.exact_csv);
    if (!a.dos_csv.empty()) emit("tailrisk_dos.csv", a.dos_csv);
    const Json& e = a.report["exact"];
    md << "## Tail risk\n\n";
    md << "- Cutoff " << fmt("%.4f", e["e_cutoff"].get<double>()) << " (fraction " << config.cutoff_fraction
       << " of the spectral range), " << fmt("%.4f%%", 100.0 * e["count_fraction"].get<double>())
       << " of levels above it\n";
    md << "- P_cat(T = 1) = " << fmt("%.6e", e["p_cat_t1"].get<double>()) << " (exact spectrum)";
    if (a.report.contains("dos")) {
      md << ", " << fmt("%.6e", a.report["dos"]["p_cat_t1"].get<double>()) << " (reconstructed DOS)";
    }
    md << "\n\n";
  });

  stage("cascade", [&] {
    const auto a = cascade_stage(ws);
    emit("cascade.csv", a.csv);
    md << "## Cascade\n\n- Final mean stress at t = " << config.cascade_time << ": "
       << fmt("%.6f", a.report["final_mean_stress"].get<double>()) << "\n\n";
  });

  stage("bench", [&] {
    const Json j = bench_report(config);
    emit("bench_report.json", dump(j));
    md << "## Memory and compression\n\n| n | bytes | decimal | binary |\n|---|---|---|---|\n";
    for (const auto& r : j["memory_table"]) {
      md << "| " << r["n"].get<std::size_t>() << " | " << r["bytes"].get<std::uint64_t>() << " | "
         << r["decimal"].get<std::string>() << " | " << r["binary"].get<std::string>() << " |\n";
    }
    md << "\nCompression ratio at 40 qubits with 120 parameters: "
       << fmt("%.4e", j["compression_ratio_40q_120"].get<double>()) << "\n\n";
    const Json& fit = j["timing"]["fit"];
    timing << "- Scaling fit: r = " << fmt("%.4f", fit["r"].get<double>()) << ", R^2 = "
           << fmt("%.4f", fit["r_squared"].get<double>()) << ", t(40) = "
           << fmt("%.4g h", j["timing"]["extrapolations_hours"]["40"].get<double>()) << "\n";
  });

  if (!result.failed.empty()) {
    md << "## Failed stages\n\n";
    for (const auto& f : result.failed) md << "- " << f << "\n";
    md << "\n";
  }
  emit("summary.md", md.str() + timing.str());
  return result;
}

}  // namespace qrs
