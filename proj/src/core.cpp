#include "imtvec/core.hpp"

#include <cstdio>
#include <ostream>

namespace imtvec {

Core::Core(Program program, const CoreConfig& cfg)
    : program_(std::move(program)),
      cfg_(cfg),
      mem_(cfg.main_memory_bytes),
      coproc_(cfg.coproc, counters_) {
  for (int h = 0; h < 3; ++h) harts_[h].pc = program_.origin;
  if (program_.instrs.empty())
    halted_ = {true, true, true};
}

void Core::set_start_pc(int hart, uint32_t pc) { harts_[hart].pc = pc; }

bool Core::pipeline_empty() const {
  for (const Slot& s : stages_)
    if (s.valid) return false;
  return true;
}

void Core::replay(Slot& s, ReplayResource res) {
  counters_.replays_by_resource[static_cast<int>(res)] += 1;
  counters_.replays_total += 1;
  if (cfg_.log_replays) replay_log_.push_back({s.hart, s.pc, res, cycle_});
  // self-referencing jump: the hart re-fetches the same pc on its next
  // rotation slot; other harts are unaffected
  harts_[s.hart].pc = s.pc;
  s.valid = false;
}

uint32_t Core::csr_read(int hart, uint32_t id) const {
  switch (id) {
    case csr::kVlen: return harts_[hart].ctrl.vlen;
    case csr::kEwidth: return harts_[hart].ctrl.ewidth;
    case csr::kPscale: return harts_[hart].ctrl.pscale;
    case csr::kCyclecount: return static_cast<uint32_t>(cycle_);
    case csr::kHartid: return static_cast<uint32_t>(hart);
    default:
      throw SimTrap("unknown CSR", hart);
  }
}

void Core::csr_write(int hart, uint32_t id, uint32_t value) {
  switch (id) {
    case csr::kVlen:
      harts_[hart].ctrl.vlen = value;
      break;
    case csr::kEwidth:
      if (value != 8 && value != 16 && value != 32)
        throw SimTrap("ewidth must be 8, 16 or 32", hart);
      harts_[hart].ctrl.ewidth = value;
      break;
    case csr::kPscale:
      if (value > 31) throw SimTrap("pscale out of range", hart);
      harts_[hart].ctrl.pscale = value;
      break;
    case csr::kCyclecount:
    case csr::kHartid:
      throw SimTrap("write to read-only CSR", hart);
    default:
      throw SimTrap("unknown CSR", hart);
  }
}

void Core::exec_scalar(const Slot& s) {
  const Instruction& i = s.instr;
  HartContext& h = harts_[s.hart];
  auto r = [&](unsigned idx) { return h.reg(idx); };
  auto sr = [&](unsigned idx) { return static_cast<int32_t>(h.reg(idx)); };
  auto wr = [&](uint32_t v) { h.set_reg(i.rd, v); };

  switch (i.op) {
    case Op::ADD: wr(r(i.rs1) + r(i.rs2)); break;
    case Op::SUB: wr(r(i.rs1) - r(i.rs2)); break;
    case Op::SLL: wr(r(i.rs1) << (r(i.rs2) & 31)); break;
    case Op::SLT: wr(sr(i.rs1) < sr(i.rs2) ? 1 : 0); break;
    case Op::SLTU: wr(r(i.rs1) < r(i.rs2) ? 1 : 0); break;
    case Op::XOR: wr(r(i.rs1) ^ r(i.rs2)); break;
    case Op::SRL: wr(r(i.rs1) >> (r(i.rs2) & 31)); break;
    case Op::SRA: wr(static_cast<uint32_t>(sr(i.rs1) >> (r(i.rs2) & 31))); break;
    case Op::OR: wr(r(i.rs1) | r(i.rs2)); break;
    case Op::AND: wr(r(i.rs1) & r(i.rs2)); break;

    case Op::ADDI: wr(r(i.rs1) + static_cast<uint32_t>(i.imm)); break;
    case Op::SLTI: wr(sr(i.rs1) < i.imm ? 1 : 0); break;
    case Op::SLTIU: wr(r(i.rs1) < static_cast<uint32_t>(i.imm) ? 1 : 0); break;
    case Op::XORI: wr(r(i.rs1) ^ static_cast<uint32_t>(i.imm)); break;
    case Op::ORI: wr(r(i.rs1) | static_cast<uint32_t>(i.imm)); break;
    case Op::ANDI: wr(r(i.rs1) & static_cast<uint32_t>(i.imm)); break;
    case Op::SLLI: wr(r(i.rs1) << (i.imm & 31)); break;
    case Op::SRLI: wr(r(i.rs1) >> (i.imm & 31)); break;
    case Op::SRAI: wr(static_cast<uint32_t>(sr(i.rs1) >> (i.imm & 31))); break;

    case Op::LUI: wr(static_cast<uint32_t>(i.imm) << 12); break;
    case Op::AUIPC: wr(s.pc + (static_cast<uint32_t>(i.imm) << 12)); break;

    case Op::MUL:
      wr(static_cast<uint32_t>(static_cast<int64_t>(sr(i.rs1)) * sr(i.rs2)));
      break;
    case Op::MULH:
      wr(static_cast<uint32_t>((static_cast<int64_t>(sr(i.rs1)) * sr(i.rs2)) >> 32));
      break;
    case Op::MULHSU:
      wr(static_cast<uint32_t>(
          (static_cast<int64_t>(sr(i.rs1)) * static_cast<uint64_t>(r(i.rs2))) >> 32));
      break;
    case Op::MULHU:
      wr(static_cast<uint32_t>(
          (static_cast<uint64_t>(r(i.rs1)) * static_cast<uint64_t>(r(i.rs2))) >> 32));
      break;
    case Op::DIV: {
      int32_t a = sr(i.rs1), b = sr(i.rs2);
      if (b == 0) wr(0xFFFFFFFFu);
      else if (a == INT32_MIN && b == -1) wr(static_cast<uint32_t>(INT32_MIN));
      else wr(static_cast<uint32_t>(a / b));
      break;
    }
    case Op::DIVU: {
      uint32_t a = r(i.rs1), b = r(i.rs2);
      wr(b == 0 ? 0xFFFFFFFFu : a / b);
      break;
    }
    case Op::REM: {
      int32_t a = sr(i.rs1), b = sr(i.rs2);
      if (b == 0) wr(static_cast<uint32_t>(a));
      else if (a == INT32_MIN && b == -1) wr(0);
      else wr(static_cast<uint32_t>(a % b));
      break;
    }
    case Op::REMU: {
      uint32_t a = r(i.rs1), b = r(i.rs2);
      wr(b == 0 ? a : a % b);
      break;
    }

    case Op::BEQ: if (r(i.rs1) == r(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::BNE: if (r(i.rs1) != r(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::BLT: if (sr(i.rs1) < sr(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::BGE: if (sr(i.rs1) >= sr(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::BLTU: if (r(i.rs1) < r(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::BGEU: if (r(i.rs1) >= r(i.rs2)) h.pc = s.pc + i.imm; break;
    case Op::JAL:
      wr(s.pc + 4);
      h.pc = s.pc + i.imm;
      break;
    case Op::JALR: {
      uint32_t t = (r(i.rs1) + static_cast<uint32_t>(i.imm)) & ~1u;
      wr(s.pc + 4);
      h.pc = t;
      break;
    }

    case Op::CSRRW: {
      uint32_t id = static_cast<uint32_t>(i.imm);
      uint32_t old = i.rd != 0 ? csr_read(s.hart, id) : 0;
      csr_write(s.hart, id, r(i.rs1));
      wr(old);
      break;
    }
    case Op::CSRRS: {
      uint32_t id = static_cast<uint32_t>(i.imm);
      uint32_t old = csr_read(s.hart, id);
      if (i.rs1 != 0) csr_write(s.hart, id, old | r(i.rs1));
      wr(old);
      break;
    }
    case Op::CSRRC: {
      uint32_t id = static_cast<uint32_t>(i.imm);
      uint32_t old = csr_read(s.hart, id);
      if (i.rs1 != 0) csr_write(s.hart, id, old & ~r(i.rs1));
      wr(old);
      break;
    }

    case Op::EBREAK:
      halted_[s.hart] = true;
      break;

    default:
      throw SimTrap("illegal instruction in scalar unit", s.hart, s.pc);
  }
}

void Core::execute(Slot& s) {
  const Instruction& i = s.instr;
  HartContext& h = harts_[s.hart];

  // An in-flight MFU register write makes the hart spin: the feed-forward
  // pipeline has no interlock, so the self-referencing jump carries the
  // dependency instead.
  if (coproc_.pending(s.hart) && coproc_.pending(s.hart)->ready > cycle_) {
    replay(s, ReplayResource::RESULT_PENDING);
    return;
  }

  InstrKind k = kind_of(i.op);
  if (k == InstrKind::Load) {
    if (coproc_.lsu().busy(cycle_)) {
      replay(s, ReplayResource::LSU);
      return;
    }
    uint32_t addr = h.reg(i.rs1) + static_cast<uint32_t>(i.imm);
    if (addr >= cfg_.coproc.spm_base)
      throw SimTrap("scalar access to SPM space", s.hart, s.pc, addr);
    unsigned width = (i.op == Op::LB || i.op == Op::LBU) ? 8
                     : (i.op == Op::LH || i.op == Op::LHU) ? 16 : 32;
    uint32_t raw = mem_.read(addr, width);
    counters_.mem_port_words += 1;
    uint32_t v = raw;
    if (i.op == Op::LB) v = static_cast<uint32_t>(static_cast<int32_t>(static_cast<int8_t>(raw)));
    if (i.op == Op::LH) v = static_cast<uint32_t>(static_cast<int32_t>(static_cast<int16_t>(raw)));
    h.set_reg(i.rd, v);
    return;
  }
  if (k == InstrKind::Store) {
    // stores may slip past an in-flight vector transfer while the memory
    // port is not streaming; loads always wait
    if (coproc_.lsu().busy(cycle_) && coproc_.lsu().port_busy(cycle_)) {
      replay(s, ReplayResource::LSU);
      return;
    }
    uint32_t addr = h.reg(i.rs1) + static_cast<uint32_t>(i.imm);
    if (addr >= cfg_.coproc.spm_base)
      throw SimTrap("scalar access to SPM space", s.hart, s.pc, addr);
    unsigned width = i.op == Op::SB ? 8 : i.op == Op::SH ? 16 : 32;
    uint32_t v = h.reg(i.rs2);
    mem_.write(addr, width, v);
    counters_.mem_port_words += 1;
    if (watch_len_ && addr >= watch_base_ && addr < watch_base_ + watch_len_) {
      completions_.push_back({s.hart, v, cycle_});
      counters_.last_completion_cycle[s.hart] = cycle_;
    }
    return;
  }
  if (is_coprocessor(i)) {
    Availability av = coproc_.availability(i, s.hart, cycle_);
    if (!av.free) {
      replay(s, av.resource);
      return;
    }
    coproc_.issue(i, s.hart, h, mem_, cycle_);
    return;
  }
  exec_scalar(s);
}

void Core::check_fence() const {
  for (int a = 0; a < 4; ++a) {
    if (!stages_[a].valid) continue;
    for (int b = a + 1; b < 4; ++b) {
      if (!stages_[b].valid) continue;
      if (stages_[a].hart == stages_[b].hart && b - a < 3)
        throw SimTrap("hazard fence violated: same hart " +
                          std::to_string(stages_[a].hart) + " at stages " +
                          std::to_string(a) + " and " + std::to_string(b),
                      stages_[a].hart, stages_[a].pc);
    }
  }
}

void Core::trace_line() const {
  char buf[32];
  std::ostream& os = *cfg_.trace;
  os << cycle_ << '\t' << harc_;
  for (int st = 3; st >= 0; --st) {
    const Slot& s = stages_[st];
    if (s.valid) {
      std::snprintf(buf, sizeof buf, "\th%d@%05x:%s", s.hart, s.pc, op_name(s.instr.op));
      os << buf;
    } else {
      os << "\t-";
    }
  }
  os << '\n';
}

void Core::step() {
  // MFU register writes land at the start of the cycle (MFU wins ties;
  // per-hart register files make cross-hart conflicts structural non-events)
  for (int h = 0; h < 3; ++h) {
    auto& p = coproc_.pending(h);
    if (p && p->ready <= cycle_) {
      harts_[h].set_reg(p->rd, p->value);
      p.reset();
    }
  }

  // stage advance
  stages_[3] = stages_[2];
  stages_[2] = stages_[1];
  stages_[1] = stages_[0];
  stages_[0].valid = false;

  // writeback / retire
  if (stages_[3].valid) {
    counters_.retired_per_hart[stages_[3].hart] += 1;
    counters_.retired_total += 1;
  }

  // execute
  if (stages_[2].valid) {
    try {
      execute(stages_[2]);
    } catch (SimTrap& t) {
      if (t.hart < 0) t.hart = stages_[2].hart;
      if (t.pc == 0) t.pc = stages_[2].pc;
      throw;
    }
  }

  // fetch: harc selects the hart; halted harts leave a bubble but the
  // rotation always advances
  int fh = harc_;
  if (!halted_[fh]) {
    uint32_t pc = harts_[fh].pc;
    if (!program_.pc_in_range(pc))
      throw SimTrap("fetch outside program memory", fh, pc);
    stages_[0] = {true, fh, pc, program_.at_pc(pc)};
    harts_[fh].pc = pc + 4;
  }
  harc_ = (harc_ + 1) % 3;

  if (cfg_.check_invariants) check_fence();
  if (cfg_.trace) trace_line();

  cycle_ += 1;
  counters_.cycles = cycle_;
}

PerfCounters Core::run(const StopCondition& stop) {
  while (true) {
    if (all_halted() && pipeline_empty()) break;
    if (cycle_ >= stop.max_cycles) break;
    if (counters_.retired_total >= stop.retired_at_least) break;
    step();
  }
  return counters_;
}

}  // namespace imtvec
