#include "imtvec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace imtvec {

namespace {

constexpr uint32_t kDoneBase = 0x100;
constexpr uint32_t kDataBase = 0x200;
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t data_seed(uint64_t seed, int build, int hart) {
  return seed ^ (kGolden * static_cast<uint64_t>(build * 4 + hart + 1));
}
uint64_t filter_seed(uint64_t seed, int build) {
  return seed ^ (kGolden * static_cast<uint64_t>(16 + build));
}

void write_words(MainMemory& mem, uint32_t base, const std::vector<int32_t>& words) {
  for (size_t i = 0; i < words.size(); ++i)
    mem.write_word(base + 4 * static_cast<uint32_t>(i),
                   static_cast<uint32_t>(words[i]));
}

std::vector<int32_t> read_words(const MainMemory& mem, uint32_t base, size_t n) {
  std::vector<int32_t> out(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = static_cast<int32_t>(mem.read_word(base + 4 * static_cast<uint32_t>(i)));
  return out;
}

struct HartData {
  std::vector<int32_t> expected;  // output words
};

}  // namespace

std::string workload_kernel_name(KernelKind kind, const KernelParams& p) {
  char buf[48];
  switch (kind) {
    case KernelKind::Conv:
      std::snprintf(buf, sizeof buf, "conv%ux%u@%ux%u", p.matrix, p.matrix,
                    p.filter, p.filter);
      return buf;
    case KernelKind::Fft:
      return "fft256";
    case KernelKind::Matmul:
      return "matmul64x64";
  }
  return "?";
}

uint32_t default_spm_count(const WorkloadSpec& w) {
  if (w.mode == WorkloadMode::Homogeneous && w.kernel == KernelKind::Matmul)
    return 3;
  return 4;
}

double energy_proxy(const PerfCounters& c, const EnergyWeights& w, uint64_t ops,
                    uint32_t mfu_count) {
  if (ops == 0) throw std::invalid_argument("energy proxy with zero op count");
  uint64_t capacity = static_cast<uint64_t>(mfu_count) * c.cycles;
  uint64_t idle = capacity > c.mfu_op_cycles ? capacity - c.mfu_op_cycles : 0;
  double events = w.retired_scalar * static_cast<double>(c.retired_total) +
                  w.vector_line * static_cast<double>(c.vector_lines) +
                  w.spm_line * static_cast<double>(c.spm_line_reads + c.spm_line_writes) +
                  w.mem_word * static_cast<double>(c.mem_port_words) +
                  w.mfu_idle * static_cast<double>(idle) +
                  w.base_cycle * static_cast<double>(c.cycles);
  return events / static_cast<double>(ops);
}

RunReport run_workload(const WorkloadSpec& w, const CoprocConfig& cfg,
                       uint64_t seed, const EnergyWeights& weights,
                       StateCapture* capture) {
  cfg.validate();
  if (w.instances < 1) throw BuildError("instances must be >= 1");

  struct Assignment {
    KernelKind kind;
    KernelParams params;
    std::string prefix;
    std::vector<int> harts;
  };
  std::vector<Assignment> assigns;
  if (w.mode == WorkloadMode::Homogeneous) {
    assigns.push_back({w.kernel, w.params, "k0_", {0, 1, 2}});
  } else {
    assigns.push_back({KernelKind::Conv, {32, 3, 0}, "conv_", {0}});
    assigns.push_back({KernelKind::Fft, {}, "fft_", {1}});
    assigns.push_back({KernelKind::Matmul, {}, "mm_", {2}});
  }

  const uint32_t mem_bytes = 1u << 20;
  MemPlanner planner{kDataBase, std::min(mem_bytes, cfg.spm_base)};
  std::vector<KernelBuild> builds;
  std::string text;
  for (auto& a : assigns) {
    builds.push_back(build_kernel(a.kind, a.params, cfg, w.instances, kDoneBase,
                                  a.prefix, planner));
    text += builds.back().asm_text;
  }

  AsmResult asmres = assemble(text, 0);
  if (!asmres.ok()) {
    std::string msg = "kernel assembly failed:";
    for (const auto& d : asmres.diagnostics)
      msg += "\n  line " + std::to_string(d.line) + ": " + d.message;
    throw std::runtime_error(msg);
  }

  CoreConfig cc;
  cc.main_memory_bytes = mem_bytes;
  cc.coproc = cfg;
  Core core(asmres.program, cc);
  core.set_watch(kDoneBase, 12);

  for (const auto& b : builds)
    for (const auto& dw : b.statics) core.memory().write_word(dw.addr, dw.value);
  for (const auto& dw : asmres.data) core.memory().write_word(dw.addr, dw.value);

  // generate inputs and expected outputs
  std::vector<std::array<HartData, 3>> expect(builds.size());
  for (size_t bi = 0; bi < builds.size(); ++bi) {
    const KernelBuild& b = builds[bi];
    switch (b.kind) {
      case KernelKind::Conv: {
        uint32_t R = b.params.matrix, K = b.params.filter;
        MatrixSpec filter = generate_matrix(filter_seed(seed, static_cast<int>(bi)), K, K);
        write_words(core.memory(), b.aux_base, filter.data);
        for (int h = 0; h < 3; ++h) {
          MatrixSpec in = generate_matrix(data_seed(seed, static_cast<int>(bi), h), R, R);
          write_words(core.memory(), b.input_base + h * b.input_stride, in.data);
          expect[bi][h].expected = oracle_conv2d(in, filter, b.params.pscale).data;
        }
        break;
      }
      case KernelKind::Matmul: {
        for (int h = 0; h < 3; ++h) {
          MatrixSpec a = generate_matrix(data_seed(seed, static_cast<int>(bi), h), 64, 64);
          MatrixSpec bm = generate_matrix(data_seed(seed, static_cast<int>(bi), h) ^ 0x5A5A5A5Aull, 64, 64);
          write_words(core.memory(), b.input_base + h * b.input_stride, a.data);
          write_words(core.memory(), b.input_base + h * b.input_stride + 16384, bm.data);
          expect[bi][h].expected = oracle_matmul(a, bm).data;
        }
        break;
      }
      case KernelKind::Fft: {
        for (int h = 0; h < 3; ++h) {
          auto x = generate_samples(data_seed(seed, static_cast<int>(bi), h), 256);
          std::vector<int32_t> words(512);
          for (size_t i = 0; i < 256; ++i) {
            words[2 * i] = x[i].re;
            words[2 * i + 1] = x[i].im;
          }
          write_words(core.memory(), b.input_base + h * b.input_stride, words);
          auto y = oracle_fft256(x);
          std::vector<int32_t>& exp = expect[bi][h].expected;
          exp.resize(512);
          for (size_t i = 0; i < 256; ++i) {
            exp[2 * i] = y[i].re;
            exp[2 * i + 1] = y[i].im;
          }
        }
        break;
      }
    }
  }

  for (size_t bi = 0; bi < builds.size(); ++bi)
    for (int h : assigns[bi].harts)
      core.set_start_pc(h, asmres.program.pc_of_index(
                               asmres.program.labels.at(builds[bi].entry)));

  StopCondition stop;
  stop.max_cycles = 4'000'000'000ull;
  core.run(stop);
  if (!core.all_halted())
    throw std::runtime_error("workload did not complete within the cycle guard");

  // correctness outranks any timing result
  for (size_t bi = 0; bi < builds.size(); ++bi) {
    const KernelBuild& b = builds[bi];
    for (int h : assigns[bi].harts) {
      auto got = read_words(core.memory(), b.output_base + h * b.output_stride,
                            expect[bi][h].expected.size());
      if (got != expect[bi][h].expected) {
        size_t at = 0;
        while (at < got.size() && got[at] == expect[bi][h].expected[at]) ++at;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "oracle mismatch: %s hart %d word %zu: got 0x%08x want 0x%08x",
                      workload_kernel_name(b.kind, b.params).c_str(), h, at,
                      static_cast<uint32_t>(got[at]),
                      static_cast<uint32_t>(expect[bi][h].expected[at]));
        throw std::runtime_error(buf);
      }
    }
  }

  RunReport rep;
  rep.scheme = cfg.scheme;
  rep.d = cfg.lanes;
  rep.f = cfg.mfu_count();
  rep.m = cfg.spmi_count();
  rep.n = cfg.spm_count;
  rep.spm_capacity = cfg.spm_capacity;
  rep.initial_latency = cfg.initial_latency;
  rep.workload = w.mode == WorkloadMode::Homogeneous ? "homogeneous" : "composite";
  rep.seed = seed;
  rep.counters = core.counters();

  uint64_t total_ops = 0;
  for (size_t bi = 0; bi < builds.size(); ++bi) {
    const KernelBuild& b = builds[bi];
    double sum = 0;
    uint64_t completed = 0;
    for (int h : assigns[bi].harts) {
      uint64_t per_hart = 0;
      for (const auto& ev : core.completions())
        if (ev.hart == h) ++per_hart;
      if (per_hart != w.instances)
        throw std::runtime_error("incomplete instances on hart " + std::to_string(h));
      sum += static_cast<double>(core.counters().last_completion_cycle[h]) /
             static_cast<double>(w.instances);
      completed += per_hart;
    }
    KernelAverage avg;
    avg.kernel = workload_kernel_name(b.kind, b.params);
    avg.avg_cycles = sum / static_cast<double>(assigns[bi].harts.size());
    avg.instances = w.instances;
    avg.ops = b.ops_per_instance;
    rep.averages.push_back(avg);
    total_ops += b.ops_per_instance * completed;
  }
  rep.energy_proxy = energy_proxy(rep.counters, weights, total_ops, cfg.mfu_count());
  rep.oracle_ok = true;

  if (capture) {
    for (int h = 0; h < 3; ++h) capture->harts[h] = core.hart(h);
    capture->main.assign(core.memory().data(),
                         core.memory().data() + core.memory().size());
    capture->spm.clear();
    for (size_t bi = 0; bi < builds.size(); ++bi) {
      for (const auto& range : builds[bi].spm_footprint) {
        for (int h = 0; h < 3; ++h) {
          uint32_t addr = range.addr + (range.per_hart ? h * cfg.spm_capacity : 0);
          auto view = core.coproc().read_range(h, addr, range.len);
          capture->spm.insert(capture->spm.end(), view.begin(), view.end());
        }
      }
    }
  }
  return rep;
}

SweepResult sweep(const std::vector<SweepCell>& cells, uint64_t seed,
                  const EnergyWeights& weights, std::ostream* progress) {
  SweepResult result;
  for (size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& cell = cells[i];
    try {
      result.reports.push_back(run_workload(cell.workload, cell.config, seed, weights));
      if (progress)
        *progress << "[" << (i + 1) << "/" << cells.size() << "] "
                  << scheme_name(cell.config.scheme) << " D" << cell.config.lanes
                  << " " << result.reports.back().averages.front().kernel << " avg "
                  << result.reports.back().averages.front().avg_cycles << "\n";
    } catch (const std::exception& e) {
      result.errors.push_back("cell " + std::to_string(i) + ": " + e.what());
      if (progress) *progress << "[" << (i + 1) << "/" << cells.size() << "] FAILED: " << e.what() << "\n";
    }
  }
  return result;
}

const std::vector<GridRow>& standard_grid() {
  static const std::vector<GridRow> grid = {
      {"SISD", Scheme::SHARED, 1},
      {"SIMD D2", Scheme::SHARED, 2},
      {"SIMD D4", Scheme::SHARED, 4},
      {"SIMD D8", Scheme::SHARED, 8},
      {"Sym MIMD D1", Scheme::DEDICATED, 1},
      {"Sym MIMD D2", Scheme::DEDICATED, 2},
      {"Sym MIMD+SIMD D4", Scheme::DEDICATED, 4},
      {"Sym MIMD+SIMD D8", Scheme::DEDICATED, 8},
      {"Het MIMD D1", Scheme::SHARED_MFU, 1},
      {"Het MIMD D2", Scheme::SHARED_MFU, 2},
      {"Het MIMD+SIMD D4", Scheme::SHARED_MFU, 4},
      {"Het MIMD+SIMD D8", Scheme::SHARED_MFU, 8},
  };
  return grid;
}

CoprocConfig grid_config(const GridRow& row, uint32_t n, uint32_t spm_capacity,
                         uint32_t initial_latency) {
  CoprocConfig cfg;
  cfg.scheme = row.scheme;
  cfg.lanes = row.d;
  cfg.spm_count = n;
  cfg.spm_capacity = spm_capacity;
  cfg.initial_latency = initial_latency;
  return cfg;
}

SweepResult run_trend_suite(uint32_t instances, uint64_t seed, std::ostream* progress) {
  std::vector<SweepCell> cells;
  auto add_grid = [&](KernelKind kind, KernelParams p) {
    WorkloadSpec w;
    w.kernel = kind;
    w.params = p;
    w.instances = instances;
    for (const auto& row : standard_grid())
      cells.push_back({w, grid_config(row, default_spm_count(w))});
  };
  add_grid(KernelKind::Conv, {4, 3, 0});
  add_grid(KernelKind::Conv, {32, 3, 0});
  add_grid(KernelKind::Fft, {});
  add_grid(KernelKind::Matmul, {});
  for (uint32_t k : {5u, 7u, 9u, 11u}) {
    WorkloadSpec w;
    w.kernel = KernelKind::Conv;
    w.params = {32, k, 0};
    w.instances = instances;
    cells.push_back({w, grid_config(standard_grid()[0], 4)});  // SISD
    cells.push_back({w, grid_config(standard_grid()[3], 4)});  // SIMD D8
  }
  return sweep(cells, seed, {}, progress);
}

namespace {

std::optional<double> find_avg(const std::vector<RunReport>& table,
                               const std::string& kernel, Scheme s, uint32_t d) {
  for (const auto& r : table) {
    if (r.scheme != s || r.d != d || r.workload != "homogeneous") continue;
    for (const auto& a : r.averages)
      if (a.kernel == kernel) return a.avg_cycles;
  }
  return std::nullopt;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::vector<TrendCheck> trend_check(const std::vector<RunReport>& table) {
  std::vector<TrendCheck> out;
  auto add = [&](const std::string& name, std::optional<bool> pass,
                 const std::string& detail) {
    TrendCheck c;
    c.name = name;
    c.status = !pass.has_value() ? TrendCheck::Status::NotRun
               : *pass           ? TrendCheck::Status::Pass
                                 : TrendCheck::Status::Fail;
    c.detail = detail;
    out.push_back(c);
  };
  const std::string conv4 = "conv4x4@3x3";
  const std::string conv32 = "conv32x32@3x3";
  const std::string fft = "fft256";
  const std::string mm = "matmul64x64";

  // DLP monotonicity in the SHARED scheme (criterion 5)
  {
    auto d1 = find_avg(table, conv32, Scheme::SHARED, 1);
    auto d2 = find_avg(table, conv32, Scheme::SHARED, 2);
    auto d4 = find_avg(table, conv32, Scheme::SHARED, 4);
    auto d8 = find_avg(table, conv32, Scheme::SHARED, 8);
    if (d1 && d2 && d4 && d8) {
      bool mono = *d1 > *d2 && *d2 > *d4 && *d4 > *d8;
      add("dlp-monotonic-conv32", mono,
          fmt2(*d1) + " > " + fmt2(*d2) + " > " + fmt2(*d4) + " > " + fmt2(*d8));
      add("dlp-ratio-conv32", *d1 / *d8 >= 2.5,
          "D1/D8 = " + fmt2(*d1 / *d8) + " (need >= 2.5)");
    } else {
      add("dlp-monotonic-conv32", std::nullopt, "missing cells");
      add("dlp-ratio-conv32", std::nullopt, "missing cells");
    }
  }
  // TLP/DLP crossover (criterion 6)
  {
    auto sym1 = find_avg(table, conv4, Scheme::DEDICATED, 1);
    auto simd8 = find_avg(table, conv4, Scheme::SHARED, 8);
    if (sym1 && simd8)
      add("crossover-conv4", *sym1 < *simd8,
          "sym D1 " + fmt2(*sym1) + " < SIMD D8 " + fmt2(*simd8));
    else
      add("crossover-conv4", std::nullopt, "missing cells");
  }
  {
    auto simd8 = find_avg(table, conv32, Scheme::SHARED, 8);
    auto sym1 = find_avg(table, conv32, Scheme::DEDICATED, 1);
    if (simd8 && sym1)
      add("crossover-conv32", *simd8 < *sym1,
          "SIMD D8 " + fmt2(*simd8) + " < sym D1 " + fmt2(*sym1));
    else
      add("crossover-conv32", std::nullopt, "missing cells");
  }
  // combined TLP+DLP is the row minimum (criterion 7)
  for (const auto& kernel : {conv32, mm}) {
    auto best = find_avg(table, kernel, Scheme::DEDICATED, 8);
    bool have_all = best.has_value();
    bool is_min = true;
    for (const auto& row : standard_grid()) {
      auto v = find_avg(table, kernel, row.scheme, row.d);
      if (!v) {
        have_all = false;
        break;
      }
      if (best && *v < *best) is_min = false;
    }
    if (have_all)
      add("combined-min-" + kernel, is_min,
          "sym+SIMD D8 " + fmt2(*best) + " is the grid minimum");
    else
      add("combined-min-" + kernel, std::nullopt, "missing cells");
  }
  // heterogeneous-vs-symmetric overhead band (criterion 8)
  for (const auto& kernel : {conv32, mm}) {
    for (uint32_t d : {1u, 2u}) {
      auto sym = find_avg(table, kernel, Scheme::DEDICATED, d);
      auto het = find_avg(table, kernel, Scheme::SHARED_MFU, d);
      std::string name = "het-band-" + kernel + "-d" + std::to_string(d);
      if (sym && het) {
        double rel = (*het - *sym) / *sym;
        add(name, rel >= 0.0 && rel <= 0.15,
            "het " + fmt2(*het) + " vs sym " + fmt2(*sym) + " (+" +
                fmt2(rel * 100) + "%, need 0..15%)");
      } else {
        add(name, std::nullopt, "missing cells");
      }
    }
  }
  // FFT prefers TLP (criterion 9)
  {
    auto sym1 = find_avg(table, fft, Scheme::DEDICATED, 1);
    auto simd8 = find_avg(table, fft, Scheme::SHARED, 8);
    auto sisd = find_avg(table, fft, Scheme::SHARED, 1);
    if (sym1 && simd8 && sisd)
      add("fft-order", *sym1 < *simd8 && *simd8 < *sisd,
          fmt2(*sym1) + " < " + fmt2(*simd8) + " < " + fmt2(*sisd));
    else
      add("fft-order", std::nullopt, "missing cells");
  }
  // larger filters amplify DLP (criterion 10)
  {
    bool have_all = true;
    bool ok = true;
    double prev = 0;
    std::string detail;
    for (uint32_t k : {3u, 5u, 7u, 9u, 11u}) {
      char kn[40];
      std::snprintf(kn, sizeof kn, "conv32x32@%ux%u", k, k);
      auto d1 = find_avg(table, kn, Scheme::SHARED, 1);
      auto d8 = find_avg(table, kn, Scheme::SHARED, 8);
      if (!d1 || !d8) {
        have_all = false;
        break;
      }
      double sp = *d1 / *d8;
      if (!detail.empty()) detail += ", ";
      detail += std::to_string(k) + "x" + std::to_string(k) + ":" + fmt2(sp);
      if (sp + 1e-9 < prev) ok = false;
      prev = sp;
    }
    if (have_all)
      add("filter-trend", ok, "SIMD D8 speedup over SISD: " + detail);
    else
      add("filter-trend", std::nullopt, "missing cells");
  }
  return out;
}

std::string report_csv(const std::vector<RunReport>& table) {
  std::string out =
      "scheme,d,f,m,n,kernel,avg_cycles,total_cycles,retired,replays,"
      "fu_busy_adder,fu_busy_mul,fu_busy_shift,fu_busy_cmp,fu_busy_move,"
      "spm_lines,mem_words,energy_proxy\n";
  char buf[512];
  for (const auto& r : table) {
    for (const auto& a : r.averages) {
      std::snprintf(
          buf, sizeof buf,
          "%s,%u,%u,%u,%u,%s,%.2f,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%.6f\n",
          scheme_name(r.scheme), r.d, r.f, r.m, r.n, a.kernel.c_str(), a.avg_cycles,
          static_cast<unsigned long long>(r.counters.cycles),
          static_cast<unsigned long long>(r.counters.retired_total),
          static_cast<unsigned long long>(r.counters.replays_total),
          static_cast<unsigned long long>(r.counters.fu_busy[0]),
          static_cast<unsigned long long>(r.counters.fu_busy[1]),
          static_cast<unsigned long long>(r.counters.fu_busy[2]),
          static_cast<unsigned long long>(r.counters.fu_busy[3]),
          static_cast<unsigned long long>(r.counters.fu_busy[4]),
          static_cast<unsigned long long>(r.counters.spm_line_reads +
                                          r.counters.spm_line_writes),
          static_cast<unsigned long long>(r.counters.mem_port_words), r.energy_proxy);
      out += buf;
    }
  }
  return out;
}

std::string report_json(const std::vector<RunReport>& table) {
  nlohmann::json root;
  root["schema_version"] = 1;
  auto& rows = root["rows"];
  rows = nlohmann::json::array();
  for (const auto& r : table) {
    nlohmann::json row;
    row["scheme"] = scheme_name(r.scheme);
    row["d"] = r.d;
    row["f"] = r.f;
    row["m"] = r.m;
    row["n"] = r.n;
    row["spm_capacity"] = r.spm_capacity;
    row["initial_latency"] = r.initial_latency;
    row["workload"] = r.workload;
    row["seed"] = r.seed;
    row["oracle_ok"] = r.oracle_ok;
    row["energy_proxy"] = r.energy_proxy;
    auto& kernels = row["kernels"];
    kernels = nlohmann::json::array();
    for (const auto& a : r.averages) {
      kernels.push_back({{"kernel", a.kernel},
                         {"avg_cycles", a.avg_cycles},
                         {"instances", a.instances},
                         {"ops_per_instance", a.ops}});
    }
    const PerfCounters& c = r.counters;
    row["counters"] = {
        {"cycles", c.cycles},
        {"retired", c.retired_total},
        {"retired_per_hart", {c.retired_per_hart[0], c.retired_per_hart[1], c.retired_per_hart[2]}},
        {"replays", c.replays_total},
        {"fu_busy", {c.fu_busy[0], c.fu_busy[1], c.fu_busy[2], c.fu_busy[3], c.fu_busy[4]}},
        {"spm_line_reads", c.spm_line_reads},
        {"spm_line_writes", c.spm_line_writes},
        {"mem_port_words", c.mem_port_words},
        {"vector_ops", c.vector_ops},
        {"vector_lines", c.vector_lines},
    };
    nlohmann::json replays;
    for (int i = 0; i < kNumReplayResources; ++i)
      replays[replay_resource_name(static_cast<ReplayResource>(i))] =
          c.replays_by_resource[i];
    row["counters"]["replays_by_resource"] = replays;
    rows.push_back(row);
  }
  return root.dump(2) + "\n";
}

std::string report_text(const std::vector<RunReport>& table) {
  // pivot: grid rows x kernel columns of average cycles
  std::vector<std::string> kernels;
  for (const auto& r : table)
    for (const auto& a : r.averages)
      if (std::find(kernels.begin(), kernels.end(), a.kernel) == kernels.end())
        kernels.push_back(a.kernel);

  std::ostringstream os;
  os << "Average cycle count per computation kernel\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-22s", "configuration");
  os << buf;
  for (const auto& k : kernels) {
    std::snprintf(buf, sizeof buf, " %16s", k.c_str());
    os << buf;
  }
  os << '\n';
  for (const auto& row : standard_grid()) {
    bool any = false;
    std::string line;
    std::snprintf(buf, sizeof buf, "%-22s", row.name.c_str());
    line += buf;
    for (const auto& k : kernels) {
      auto v = find_avg(table, k, row.scheme, row.d);
      if (v) {
        std::snprintf(buf, sizeof buf, " %16.1f", *v);
        any = true;
      } else {
        std::snprintf(buf, sizeof buf, " %16s", "-");
      }
      line += buf;
    }
    if (any) os << line << '\n';
  }
  return os.str();
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

HarnessConfig parse_config(const std::map<std::string, std::string>& kv) {
  HarnessConfig hc;
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto get_u32 = [&](const char* key, uint32_t& out) {
    if (auto v = get(key)) out = static_cast<uint32_t>(std::stoul(*v, nullptr, 0));
  };
  auto get_f = [&](const char* key, double& out) {
    if (auto v = get(key)) out = std::stod(*v);
  };

  if (auto s = get("scheme")) {
    if (*s == "shared") hc.coproc.scheme = Scheme::SHARED;
    else if (*s == "dedicated") hc.coproc.scheme = Scheme::DEDICATED;
    else if (*s == "shared_mfu") hc.coproc.scheme = Scheme::SHARED_MFU;
    else throw std::runtime_error("unknown scheme '" + *s + "'");
  }
  get_u32("d", hc.coproc.lanes);
  if (auto v = get("n")) {
    hc.coproc.spm_count = static_cast<uint32_t>(std::stoul(*v, nullptr, 0));
    hc.n_explicit = true;
  }
  get_u32("spm_capacity", hc.coproc.spm_capacity);
  get_u32("initial_latency", hc.coproc.initial_latency);
  get_u32("spm_base", hc.coproc.spm_base);
  if (auto v = get("seed")) hc.seed = std::stoull(*v, nullptr, 0);

  if (auto wl = get("workload")) {
    if (*wl == "composite") {
      hc.workload.mode = WorkloadMode::Composite;
    } else if (*wl == "conv") {
      hc.workload.kernel = KernelKind::Conv;
    } else if (*wl == "fft") {
      hc.workload.kernel = KernelKind::Fft;
    } else if (*wl == "matmul") {
      hc.workload.kernel = KernelKind::Matmul;
    } else {
      throw std::runtime_error("unknown workload '" + *wl + "'");
    }
  }
  get_u32("matrix", hc.workload.params.matrix);
  get_u32("filter", hc.workload.params.filter);
  get_u32("pscale", hc.workload.params.pscale);
  get_u32("instances", hc.workload.instances);

  get_f("w_retired", hc.weights.retired_scalar);
  get_f("w_vector_line", hc.weights.vector_line);
  get_f("w_spm_line", hc.weights.spm_line);
  get_f("w_mem_word", hc.weights.mem_word);
  get_f("w_mfu_idle", hc.weights.mfu_idle);
  get_f("w_base_cycle", hc.weights.base_cycle);

  if (!hc.n_explicit) hc.coproc.spm_count = default_spm_count(hc.workload);
  return hc;
}

}  // namespace imtvec
