#ifndef IMTVEC_HARNESS_HPP
#define IMTVEC_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "imtvec/core.hpp"
#include "imtvec/kernels.hpp"

namespace imtvec {

enum class WorkloadMode : uint8_t { Homogeneous, Composite };

struct WorkloadSpec {
  WorkloadMode mode = WorkloadMode::Homogeneous;
  KernelKind kernel = KernelKind::Conv;  // homogeneous only
  KernelParams params;
  uint32_t instances = 8;  // per hart
};

std::string workload_kernel_name(KernelKind kind, const KernelParams& p);

// nJ-equivalents per event class; user-supplied, trends only.
struct EnergyWeights {
  double retired_scalar = 1.0;
  double vector_line = 2.0;
  double spm_line = 1.0;
  double mem_word = 4.0;
  double mfu_idle = 0.5;
  double base_cycle = 1.0;
};

struct KernelAverage {
  std::string kernel;   // e.g. "conv32x32@3x3"
  double avg_cycles;    // per-hart average span per instance
  uint64_t instances;   // per hart
  uint64_t ops;         // algorithmic ops per instance (oracle census)
};

struct RunReport {
  Scheme scheme;
  uint32_t d, f, m, n, spm_capacity, initial_latency;
  std::string workload;  // "homogeneous" | "composite"
  uint64_t seed;
  std::vector<KernelAverage> averages;
  PerfCounters counters;
  double energy_proxy;
  bool oracle_ok;
};

// Final architectural state for cross-scheme equivalence checks.
struct StateCapture {
  std::array<HartContext, 3> harts;
  std::vector<uint8_t> main;
  std::vector<uint8_t> spm;  // concatenated per-hart footprint views
};

double energy_proxy(const PerfCounters& c, const EnergyWeights& w, uint64_t ops,
                    uint32_t mfu_count);

// Builds the per-hart programs, runs to completion, verifies every output
// against the scalar oracles (mismatch throws), and computes the averages.
RunReport run_workload(const WorkloadSpec& w, const CoprocConfig& cfg,
                       uint64_t seed, const EnergyWeights& weights = {},
                       StateCapture* capture = nullptr);

struct SweepCell {
  WorkloadSpec workload;
  CoprocConfig config;
};

struct SweepResult {
  std::vector<RunReport> reports;
  std::vector<std::string> errors;  // one entry per failed cell
};

SweepResult sweep(const std::vector<SweepCell>& cells, uint64_t seed,
                  const EnergyWeights& weights = {}, std::ostream* progress = nullptr);

// The paper's explored T13 design points: (scheme, D) grid.
struct GridRow {
  std::string name;
  Scheme scheme;
  uint32_t d;
};
const std::vector<GridRow>& standard_grid();
CoprocConfig grid_config(const GridRow& row, uint32_t n, uint32_t spm_capacity = 8192,
                         uint32_t initial_latency = 4);

// Runs every cell the trend checks reference (full grid for conv 4x4,
// conv 32x32, fft, matmul, plus the larger-filter columns).
SweepResult run_trend_suite(uint32_t instances = 8, uint64_t seed = 1,
                            std::ostream* progress = nullptr);

struct TrendCheck {
  std::string name;
  enum class Status { Pass, Fail, NotRun } status;
  std::string detail;
};

std::vector<TrendCheck> trend_check(const std::vector<RunReport>& table);

std::string report_csv(const std::vector<RunReport>& table);
std::string report_json(const std::vector<RunReport>& table);
std::string report_text(const std::vector<RunReport>& table);

// Flat key=value configuration (# comments allowed).
struct HarnessConfig {
  CoprocConfig coproc;
  WorkloadSpec workload;
  uint64_t seed = 1;
  EnergyWeights weights;
  bool n_explicit = false;  // n= given; otherwise per-kernel default
};

HarnessConfig parse_config(const std::map<std::string, std::string>& kv);
std::map<std::string, std::string> read_config_file(const std::string& path);

// N defaults to the paper's usage: 3 for matmul, 4 elsewhere.
uint32_t default_spm_count(const WorkloadSpec& w);

}  // namespace imtvec

#endif  // IMTVEC_HARNESS_HPP
