#ifndef IMTVEC_COPROC_HPP
#define IMTVEC_COPROC_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "imtvec/counters.hpp"
#include "imtvec/isa.hpp"
#include "imtvec/memory.hpp"

namespace imtvec {

enum class Scheme : uint8_t { SHARED, DEDICATED, SHARED_MFU };

const char* scheme_name(Scheme s);

// One design point of the coprocessor subsystem. M and F are implied by the
// sharing scheme (M=1,F=1 / M=3,F=3 / M=3,F=1).
struct CoprocConfig {
  Scheme scheme = Scheme::SHARED;
  uint32_t lanes = 1;              // D: lanes per MFU == banks per SPM
  uint32_t spm_count = 4;          // N: scratchpads per SPMI
  uint32_t spm_capacity = 8192;    // bytes per scratchpad
  uint32_t initial_latency = 4;    // SPM access setup, 4..8
  uint32_t spm_base = 0x00100000;  // SPM window base address (per-SPMI space)

  uint32_t mfu_count() const { return scheme == Scheme::DEDICATED ? 3 : 1; }
  uint32_t spmi_count() const { return scheme == Scheme::SHARED ? 1 : 3; }
  uint32_t line_bytes() const { return 4 * lanes; }
  void validate() const;  // throws std::invalid_argument
};

// Latency of a vector arithmetic op: one D-bank line (4*D bytes) per cycle
// after the initial SPM access latency.
inline uint64_t vector_latency(uint64_t vlen_bytes, uint32_t lanes, uint32_t initial) {
  return initial + (vlen_bytes + 4ull * lanes - 1) / (4ull * lanes);
}

struct SpmAddress {
  uint32_t spmi;
  uint32_t spm;
  uint32_t offset;
};

SpmAddress map_spm_address(uint32_t addr, int hart, const CoprocConfig& cfg);

struct Availability {
  bool free = true;
  ReplayResource resource = ReplayResource::MFU;
};

// MFU register-write in flight (kdotp/kdotpps destination).
struct PendingWrite {
  uint8_t rd = 0;
  uint32_t value = 0;
  uint64_t ready = 0;
};

struct LsuState {
  uint64_t busy_until = 0;   // vector transfer in flight while now < busy_until
  uint64_t stream_from = 0;  // memory port occupied in [stream_from, busy_until)
  int active_hart = -1;

  bool busy(uint64_t now) const { return now < busy_until; }
  bool port_busy(uint64_t now) const { return now >= stream_from && now < busy_until; }
};

// The MFU/SPM/SPMI subsystem: storage, semantics of the vector instructions,
// and the contention rules of the three sharing schemes.
class VectorCoprocessor {
 public:
  VectorCoprocessor(const CoprocConfig& cfg, PerfCounters& counters);

  const CoprocConfig& config() const { return cfg_; }
  LsuState& lsu() { return lsu_; }
  const LsuState& lsu() const { return lsu_; }

  // Queries resource availability for issuing i by hart at cycle `now`.
  Availability availability(const Instruction& i, int hart, uint64_t now) const;

  // Executes i (semantics applied immediately; timing recorded in busy
  // windows) and returns its latency. Precondition: availability() is free.
  uint64_t issue(const Instruction& i, int hart, HartContext& ctx,
                 MainMemory& mem, uint64_t now);

  std::optional<PendingWrite>& pending(int hart) { return pending_[hart]; }

  // Logical (bank-deinterleaved) scratchpad contents.
  uint32_t spm_word(uint32_t spmi, uint32_t spm, uint32_t offset) const;
  std::vector<uint32_t> dump_spm(uint32_t spmi, uint32_t spm) const;
  // Whole-subsystem view of a hart's address range, for state comparison.
  std::vector<uint8_t> read_range(int hart, uint32_t addr, uint32_t len) const;

  uint64_t mfu_busy_until(int mfu) const { return mfu_busy_[mfu]; }

 private:
  struct ClassBusy {
    uint64_t from = 0;
    uint64_t until = 0;
    int hart = -1;
  };

  uint32_t spmi_of(int hart) const {
    return cfg_.scheme == Scheme::SHARED ? 0u : static_cast<uint32_t>(hart);
  }
  uint8_t* spm_ptr(uint32_t spmi, uint32_t spm) {
    return storage_[spmi * cfg_.spm_count + spm].data();
  }
  const uint8_t* spm_ptr(uint32_t spmi, uint32_t spm) const {
    return storage_[spmi * cfg_.spm_count + spm].data();
  }

  struct Operand {       // a mapped SPM span
    uint8_t* base;
    uint32_t offset;
  };
  Operand map_operand(uint32_t addr, uint32_t len, int hart, uint64_t pc_for_trap) ;

  uint64_t exec_arith(const Instruction& i, int hart, HartContext& ctx, uint64_t now);
  uint64_t exec_transfer(const Instruction& i, int hart, HartContext& ctx,
                         MainMemory& mem, uint64_t now);

  CoprocConfig cfg_;
  PerfCounters& counters_;
  std::vector<std::vector<uint8_t>> storage_;  // [spmi * N + spm]
  std::vector<uint64_t> spmi_busy_;            // per SPMI
  std::array<uint64_t, 3> mfu_busy_{};         // per MFU (index 0 if F=1)
  std::array<ClassBusy, kNumFuClasses> class_busy_{};  // SHARED_MFU only
  std::array<std::optional<PendingWrite>, 3> pending_{};
  LsuState lsu_;
};

}  // namespace imtvec

#endif  // IMTVEC_COPROC_HPP
