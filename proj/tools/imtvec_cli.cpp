#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "imtvec/assembler.hpp"
#include "imtvec/harness.hpp"

using namespace imtvec;

namespace {

struct CommonFlags {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* app, bool workload_keys) {
    app->add_option("--config", config_path, "key=value configuration file");
    auto opt = [&](const char* flag, const char* key) {
      app->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { overrides[key] = v; });
    };
    opt("--scheme", "scheme");
    opt("--d", "d");
    opt("--n", "n");
    opt("--spm-capacity", "spm_capacity");
    opt("--initial-latency", "initial_latency");
    opt("--spm-base", "spm_base");
    opt("--seed", "seed");
    if (workload_keys) {
      opt("--workload", "workload");
      opt("--matrix", "matrix");
      opt("--filter", "filter");
      opt("--pscale", "pscale");
      opt("--instances", "instances");
      opt("--weights", "weights");
    }
  }

  HarnessConfig resolve() const {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = read_config_file(config_path);
    if (auto it = overrides.find("weights"); it != overrides.end()) {
      auto wkv = read_config_file(it->second);
      for (auto& [k, v] : wkv) kv[k] = v;
    } else if (auto cit = kv.find("weights"); cit != kv.end()) {
      auto wkv = read_config_file(cit->second);
      kv.erase("weights");
      for (auto& [k, v] : wkv) kv[k] = v;
    }
    for (auto& [k, v] : overrides)
      if (k != "weights") kv[k] = v;
    return parse_config(kv);
  }
};

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << content;
}

std::string render(const std::vector<RunReport>& reports, const std::string& format) {
  if (format == "csv") return report_csv(reports);
  if (format == "json") return report_json(reports);
  return report_text(reports);
}

int cmd_run(const CommonFlags& flags, const std::string& format,
            const std::string& out) {
  HarnessConfig hc = flags.resolve();
  RunReport rep = run_workload(hc.workload, hc.coproc, hc.seed, hc.weights);
  write_out(out, render({rep}, format));
  if (format == "text") {
    char buf[128];
    for (const auto& a : rep.averages) {
      std::snprintf(buf, sizeof buf, "%-16s avg %.1f cycles/instance\n",
                    a.kernel.c_str(), a.avg_cycles);
      std::cout << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "total %llu cycles, %llu retired, %llu replays, energy proxy %.4f\n",
                  static_cast<unsigned long long>(rep.counters.cycles),
                  static_cast<unsigned long long>(rep.counters.retired_total),
                  static_cast<unsigned long long>(rep.counters.replays_total),
                  rep.energy_proxy);
    std::cout << buf;
  }
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& workloads,
              const std::string& format, const std::string& out, bool quiet) {
  HarnessConfig hc = flags.resolve();
  std::vector<SweepCell> cells;
  std::stringstream ss(workloads);
  std::string item;
  auto add_grid = [&](const WorkloadSpec& w) {
    for (const auto& row : standard_grid()) {
      CoprocConfig cfg = grid_config(row, hc.n_explicit ? hc.coproc.spm_count
                                                        : default_spm_count(w),
                                     hc.coproc.spm_capacity, hc.coproc.initial_latency);
      cells.push_back({w, cfg});
    }
  };
  while (std::getline(ss, item, ',')) {
    WorkloadSpec w;
    w.instances = hc.workload.instances;
    if (item == "conv4" || item == "conv8" || item == "conv16" || item == "conv32") {
      w.kernel = KernelKind::Conv;
      w.params = {static_cast<uint32_t>(std::stoul(item.substr(4))), 3, 0};
      add_grid(w);
    } else if (item == "fft") {
      w.kernel = KernelKind::Fft;
      add_grid(w);
    } else if (item == "matmul") {
      w.kernel = KernelKind::Matmul;
      add_grid(w);
    } else if (item == "composite") {
      w.mode = WorkloadMode::Composite;
      add_grid(w);
    } else if (item == "filters") {
      for (uint32_t k : {5u, 7u, 9u, 11u}) {
        w.kernel = KernelKind::Conv;
        w.params = {32, k, 0};
        cells.push_back({w, grid_config(standard_grid()[0], 4, hc.coproc.spm_capacity,
                                        hc.coproc.initial_latency)});
        cells.push_back({w, grid_config(standard_grid()[3], 4, hc.coproc.spm_capacity,
                                        hc.coproc.initial_latency)});
      }
    } else {
      std::cerr << "unknown workload '" << item << "'\n";
      return 2;
    }
  }
  SweepResult res = sweep(cells, hc.seed, hc.weights, quiet ? nullptr : &std::cerr);
  write_out(out, render(res.reports, format));
  for (const auto& e : res.errors) std::cerr << "error: " << e << "\n";
  return res.errors.empty() ? 0 : 1;
}

int cmd_check(uint32_t instances, uint64_t seed, bool quiet) {
  SweepResult res = run_trend_suite(instances, seed, quiet ? nullptr : &std::cerr);
  for (const auto& e : res.errors) std::cerr << "cell error: " << e << "\n";
  auto checks = trend_check(res.reports);
  bool all_pass = res.errors.empty();
  for (const auto& c : checks) {
    const char* st = c.status == TrendCheck::Status::Pass   ? "PASS"
                     : c.status == TrendCheck::Status::Fail ? "FAIL"
                                                            : "NOT-RUN";
    if (c.status != TrendCheck::Status::Pass) all_pass = false;
    std::cout << "[" << st << "] " << c.name << ": " << c.detail << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_asm(const std::string& path, uint32_t origin, const std::string& out) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  SourceUnit src;
  src.filename = path;
  std::string line;
  while (std::getline(f, line)) src.lines.push_back(line);
  AsmResult res = assemble(src, origin);
  for (const auto& d : res.diagnostics)
    std::cerr << path << ":" << d.line << ": "
              << (d.severity == AsmDiagnostic::Severity::Error ? "error" : "warning")
              << ": " << d.message << "\n";
  if (!res.ok()) return 1;
  std::string text;
  for (const auto& l : disassemble(res.program).lines) text += l + "\n";
  write_out(out, text);
  std::cerr << res.program.instrs.size() << " instructions, "
            << res.data.size() << " data words\n";
  return 0;
}

int cmd_trace(const CommonFlags& flags, const std::string& path, uint64_t cycles,
              const std::string& out) {
  HarnessConfig hc = flags.resolve();
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  SourceUnit src;
  src.filename = path;
  std::string line;
  while (std::getline(f, line)) src.lines.push_back(line);
  AsmResult res = assemble(src, 0);
  for (const auto& d : res.diagnostics)
    std::cerr << path << ":" << d.line << ": " << d.message << "\n";
  if (!res.ok()) return 1;

  std::ostringstream trace;
  CoreConfig cc;
  cc.coproc = hc.coproc;
  cc.trace = &trace;
  Core core(res.program, cc);
  for (const auto& dw : res.data) core.memory().write_word(dw.addr, dw.value);
  StopCondition stop;
  stop.max_cycles = cycles;
  try {
    core.run(stop);
  } catch (const SimTrap& t) {
    std::cerr << "trap: " << t.what() << " (hart " << t.hart << ", pc 0x" << std::hex
              << t.pc << ")\n";
  }
  write_out(out, trace.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imtvec: interleaved-multithreaded RISC-V core + vector coprocessor simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, trace_flags;
  std::string format = "text", out, workloads = "conv4,conv32,fft,matmul,filters";
  std::string sweep_format = "csv", sweep_out;
  uint32_t check_instances = 8;
  uint64_t check_seed = 1;
  bool quiet = false;
  std::string asm_path, trace_path, asm_out, trace_out;
  uint32_t asm_origin = 0;
  uint64_t trace_cycles = 200;

  auto* run = app.add_subcommand("run", "run one workload on one configuration");
  run_flags.attach(run, true);
  run->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  run->add_option("--out", out, "write the report to a file");

  auto* sw = app.add_subcommand("sweep", "run workloads across the configuration grid");
  sweep_flags.attach(sw, true);
  sw->add_option("--workloads", workloads,
                 "comma list: conv4,conv8,conv16,conv32,fft,matmul,filters,composite");
  sw->add_option("--format", sweep_format)->check(CLI::IsMember({"text", "csv", "json"}));
  sw->add_option("--out", sweep_out);
  sw->add_flag("--quiet", quiet);

  auto* check = app.add_subcommand("check", "run the trend suite and report pass/fail");
  check->add_option("--instances", check_instances);
  check->add_option("--seed", check_seed);
  check->add_flag("--quiet", quiet);

  auto* as = app.add_subcommand("asm", "assemble a source file and print the disassembly");
  as->add_option("file", asm_path)->required();
  as->add_option("--origin", asm_origin);
  as->add_option("--out", asm_out);

  auto* tr = app.add_subcommand("trace", "run an assembly program with a cycle trace");
  trace_flags.attach(tr, false);
  tr->add_option("file", trace_path)->required();
  tr->add_option("--cycles", trace_cycles);
  tr->add_option("--out", trace_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags, format, out);
    if (sw->parsed()) return cmd_sweep(sweep_flags, workloads, sweep_format, sweep_out, quiet);
    if (check->parsed()) return cmd_check(check_instances, check_seed, quiet);
    if (as->parsed()) return cmd_asm(asm_path, asm_origin, asm_out);
    if (tr->parsed()) return cmd_trace(trace_flags, trace_path, trace_cycles, trace_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
