#ifndef IMTVEC_COUNTERS_HPP
#define IMTVEC_COUNTERS_HPP

#include <array>
#include <cstdint>

namespace imtvec {

// Resources a hart can spin on via the self-referencing-jump replay.
enum class ReplayResource : uint8_t {
  MFU, FU_ADDER, FU_MULTIPLIER, FU_SHIFTER, FU_COMPARE, FU_MOVE,
  SPMI, LSU, RESULT_PENDING,
};
inline constexpr int kNumReplayResources = 9;

const char* replay_resource_name(ReplayResource r);

struct PerfCounters {
  uint64_t cycles = 0;
  std::array<uint64_t, 3> retired_per_hart{};
  uint64_t retired_total = 0;
  std::array<uint64_t, kNumReplayResources> replays_by_resource{};
  uint64_t replays_total = 0;
  // unit occupancy in streaming cycles, per FunctionalUnitClass
  std::array<uint64_t, 5> fu_busy{};
  uint64_t spm_line_reads = 0;
  uint64_t spm_line_writes = 0;
  uint64_t mem_port_words = 0;
  // sum of issued coprocessor op latencies (per-MFU busy time)
  uint64_t mfu_op_cycles = 0;
  uint64_t vector_ops = 0;
  uint64_t vector_lines = 0;  // total SPM lines streamed by MFU ops
  std::array<uint64_t, 3> last_completion_cycle{};
};

}  // namespace imtvec

#endif  // IMTVEC_COUNTERS_HPP
