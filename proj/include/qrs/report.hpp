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

#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qrs/bench.hpp"
#include "qrs/dos.hpp"
#include "qrs/network.hpp"
#include "qrs/policy.hpp"
#include "qrs/spectrum.hpp"
#include "qrs/vqe.hpp"

namespace qrs {

using Json = nlohmann::ordered_json;

/// Where the fixture survival amplitude starts.
enum class DosState { ground, stable };

DosState parse_dos_state(std::string_view name);
std::string_view to_string(DosState s);

struct TemperatureGridSpec {
  double t_min = 1e-2;
  double t_max = 1e6;
  std::size_t points = 50;
  bool log_spaced = true;
};

struct BenchRange {
  std::size_t n_min = 6;
  std::size_t n_max = 16;
  std::size_t repeats = 5;
  Workload workload = Workload::energy_eval;
};

/// Every knob of the pipeline. Defaults reproduce the reference setup.
struct RunConfig {
  std::uint64_t seed = 42;
  std::optional<std::string> network_path;   // overrides the generated fixture
  Scenario scenario = Scenario::A;
  std::size_t qubits = 12;
  std::size_t depth = 3;
  std::size_t restarts = 5;
  std::size_t max_evaluations = 2000;
  OptimizerKind optimizer = OptimizerKind::quadratic;
  std::vector<std::size_t> study_depths{1, 2, 3, 4, 5};
  std::size_t steps = 32;
  double t_max = 10.0;
  std::size_t padding = 8;
  DosState dos_state = DosState::ground;
  double cascade_time = 5.0;
  double cutoff_fraction = 0.85;
  double advantage_threshold = 0.15;
  double mean_coupling_reference = 0.55;
  TemperatureGridSpec temperatures;
  BenchRange bench;
  std::uint64_t memory_limit = std::uint64_t{2} << 30;
  std::size_t threads = 1;
  std::string out_dir = "qrs_out";

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Effective configuration in the same shape the config file uses.
Json to_json(const RunConfig& config);

/// Overlays the keys present in `j` onto `base`; unknown keys are rejected.
RunConfig apply_config_json(RunConfig base, const Json& j);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/**
 * @brief Lazily computed state shared by the pipeline stages.
 *
 * Holds the network, the sub-network Hamiltonian, the reference ground
 * energy and the VQE result so a bundle computes each of them once. Not
 * thread safe.
 */
class Workspace {
 public:
  explicit Workspace(RunConfig config);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const RunConfig& config() const { return config_; }
  /// Full network with the configured scenario applied.
  const SupplyNetwork& network();
  const SupplyNetwork& subnetwork();
  const PauliSum& hamiltonian();
  /// Exact ground state when n <= 14, Lanczos up to 20 qubits.
  double reference_energy();
  bool reference_is_exact();
  const Spectrum& exact_spectrum();
  const VqeResult& vqe();
  double vqe_seconds();

 private:
  struct Cache;
  RunConfig config_;
  std::unique_ptr<Cache> cache_;
};

// Stage outputs. Everything that depends on wall-clock time lives under a
// top-level "timing" key.
Json network_report(Workspace& ws);
Json exact_report(Workspace& ws);
Json vqe_report(Workspace& ws, bool include_depth_study = true);
Json depth_study_report(Workspace& ws);
Json advantage_report(Workspace& ws);
Json policy_report(Workspace& ws, bool include_heatmap = true);
Json bench_report(const RunConfig& config);

struct DosArtifacts {
  DosResult result;
  Json report;
  std::string series_csv;
  std::string density_csv;
};

DosArtifacts dos_stage(Workspace& ws);

struct TailRiskArtifacts {
  Json report;
  std::string exact_csv;
  std::string dos_csv;   // empty when the DOS stage was not run
};

TailRiskArtifacts tailrisk_stage(Workspace& ws, const DosResult* dos = nullptr);

struct CascadeArtifacts {
  Json report;
  std::string csv;
};

CascadeArtifacts cascade_stage(Workspace& ws);

struct BundleResult {
  std::vector<std::string> written;   // file names inside out_dir
  std::vector<std::string> failed;    // "stage: message"
};

/**
 * @brief Runs every stage and writes the report bundle into config.out_dir.
 *
 * A failing stage is recorded in summary.md and in `failed`; later stages
 * still run and their files are still written.
 */
BundleResult report_bundle(const RunConfig& config);

/// Stable JSON text: two-space indent and a trailing newline.
std::string dump(const Json& j);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Copy of `j` without the top-level "timing" key.
Json strip_timing(Json j);

}  // namespace qrs
