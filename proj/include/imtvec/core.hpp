#ifndef IMTVEC_CORE_HPP
#define IMTVEC_CORE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "imtvec/coproc.hpp"
#include "imtvec/counters.hpp"
#include "imtvec/isa.hpp"
#include "imtvec/memory.hpp"

namespace imtvec {

struct ReplayEvent {
  int hart;
  uint32_t pc;
  ReplayResource resource;
  uint64_t cycle;
};

// A store into the watched address range; kernels use it to signal
// per-instance completion to the harness.
struct CompletionEvent {
  int hart;
  uint32_t value;
  uint64_t cycle;
};

struct CoreConfig {
  uint32_t main_memory_bytes = 1u << 20;
  CoprocConfig coproc;
  bool check_invariants = true;  // hazard-fence assertion each cycle
  bool log_replays = false;
  std::ostream* trace = nullptr;
};

struct StopCondition {
  uint64_t max_cycles = UINT64_MAX;
  uint64_t retired_at_least = UINT64_MAX;
  // always stops when all harts have halted and the pipeline drained
};

// The 4-stage, 3-hart interleaved-multithreading pipeline. One instance is
// strictly single-threaded and deterministic.
class Core {
 public:
  Core(Program program, const CoreConfig& cfg);
  Core(const Core&) = delete;
  Core& operator=(const Core&) = delete;

  void set_start_pc(int hart, uint32_t pc);
  void set_halted(int hart, bool halted) { halted_[hart] = halted; }
  void set_watch(uint32_t base, uint32_t len) { watch_base_ = base; watch_len_ = len; }

  MainMemory& memory() { return mem_; }
  const MainMemory& memory() const { return mem_; }
  VectorCoprocessor& coproc() { return coproc_; }
  const VectorCoprocessor& coproc() const { return coproc_; }
  HartContext& hart(int h) { return harts_[h]; }
  const HartContext& hart(int h) const { return harts_[h]; }

  void step();
  PerfCounters run(const StopCondition& stop = {});

  uint64_t cycle() const { return cycle_; }
  bool halted(int h) const { return halted_[h]; }
  bool all_halted() const { return halted_[0] && halted_[1] && halted_[2]; }
  bool pipeline_empty() const;
  const PerfCounters& counters() const { return counters_; }
  const std::vector<CompletionEvent>& completions() const { return completions_; }
  const std::vector<ReplayEvent>& replay_log() const { return replay_log_; }
  int harc() const { return harc_; }

 private:
  struct Slot {
    bool valid = false;
    int hart = 0;
    uint32_t pc = 0;
    Instruction instr;
  };

  void execute(Slot& s);
  void exec_scalar(const Slot& s);
  void replay(Slot& s, ReplayResource res);
  uint32_t csr_read(int hart, uint32_t id) const;
  void csr_write(int hart, uint32_t id, uint32_t value);
  void check_fence() const;
  void trace_line() const;

  Program program_;
  CoreConfig cfg_;
  PerfCounters counters_;
  MainMemory mem_;
  VectorCoprocessor coproc_;
  std::array<HartContext, 3> harts_;
  std::array<bool, 3> halted_{};
  // stage occupancy: [0]=fetch, [1]=decode, [2]=execute, [3]=writeback
  std::array<Slot, 4> stages_;
  int harc_ = 0;
  uint64_t cycle_ = 0;
  uint32_t watch_base_ = 0;
  uint32_t watch_len_ = 0;
  std::vector<CompletionEvent> completions_;
  std::vector<ReplayEvent> replay_log_;
};

}  // namespace imtvec

#endif  // IMTVEC_CORE_HPP
