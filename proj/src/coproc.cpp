#include "imtvec/coproc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace imtvec {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::SHARED: return "shared";
    case Scheme::DEDICATED: return "dedicated";
    case Scheme::SHARED_MFU: return "shared_mfu";
  }
  return "?";
}

const char* replay_resource_name(ReplayResource r) {
  switch (r) {
    case ReplayResource::MFU: return "MFU";
    case ReplayResource::FU_ADDER: return "ADDER";
    case ReplayResource::FU_MULTIPLIER: return "MULTIPLIER";
    case ReplayResource::FU_SHIFTER: return "SHIFTER";
    case ReplayResource::FU_COMPARE: return "COMPARE";
    case ReplayResource::FU_MOVE: return "MOVE";
    case ReplayResource::SPMI: return "SPMI";
    case ReplayResource::LSU: return "LSU";
    case ReplayResource::RESULT_PENDING: return "RESULT-PENDING";
  }
  return "?";
}

namespace {

ReplayResource fu_resource(FunctionalUnitClass c) {
  switch (c) {
    case FunctionalUnitClass::ADDER: return ReplayResource::FU_ADDER;
    case FunctionalUnitClass::MULTIPLIER: return ReplayResource::FU_MULTIPLIER;
    case FunctionalUnitClass::SHIFTER: return ReplayResource::FU_SHIFTER;
    case FunctionalUnitClass::COMPARE: return ReplayResource::FU_COMPARE;
    case FunctionalUnitClass::MOVE: return ReplayResource::FU_MOVE;
  }
  return ReplayResource::MFU;
}

int64_t read_elem(const uint8_t* p, uint32_t off, uint32_t ew) {
  switch (ew) {
    case 8:
      return static_cast<int8_t>(p[off]);
    case 16:
      return static_cast<int16_t>(static_cast<uint16_t>(p[off]) |
                                  (static_cast<uint16_t>(p[off + 1]) << 8));
    default: {
      uint32_t v = static_cast<uint32_t>(p[off]) |
                   (static_cast<uint32_t>(p[off + 1]) << 8) |
                   (static_cast<uint32_t>(p[off + 2]) << 16) |
                   (static_cast<uint32_t>(p[off + 3]) << 24);
      return static_cast<int32_t>(v);
    }
  }
}

void write_elem(uint8_t* p, uint32_t off, uint32_t ew, int64_t value) {
  uint32_t v = static_cast<uint32_t>(value);
  p[off] = static_cast<uint8_t>(v);
  if (ew >= 16) p[off + 1] = static_cast<uint8_t>(v >> 8);
  if (ew == 32) {
    p[off + 2] = static_cast<uint8_t>(v >> 16);
    p[off + 3] = static_cast<uint8_t>(v >> 24);
  }
}

// sign-extend the low ew bits
int64_t sext(uint32_t v, uint32_t ew) {
  if (ew == 32) return static_cast<int32_t>(v);
  uint32_t mask = (1u << ew) - 1;
  uint32_t x = v & mask;
  if (x & (1u << (ew - 1))) x |= ~mask;
  return static_cast<int32_t>(x);
}

}  // namespace

void CoprocConfig::validate() const {
  if (lanes != 1 && lanes != 2 && lanes != 4 && lanes != 8)
    throw std::invalid_argument("D must be one of {1,2,4,8}");
  if (spm_count == 0 || spm_count > 16)
    throw std::invalid_argument("N out of range");
  if (spm_capacity == 0 || spm_capacity % (4 * lanes) != 0)
    throw std::invalid_argument("spm_capacity must be a multiple of 4*D");
  if (initial_latency < 4 || initial_latency > 8)
    throw std::invalid_argument("initial_latency must be in [4,8]");
}

SpmAddress map_spm_address(uint32_t addr, int hart, const CoprocConfig& cfg) {
  uint32_t spmi = cfg.scheme == Scheme::SHARED ? 0 : static_cast<uint32_t>(hart);
  if (addr < cfg.spm_base)
    throw SimTrap("SPM address below window", hart, 0, addr);
  uint32_t rel = addr - cfg.spm_base;
  uint32_t spm = rel / cfg.spm_capacity;
  if (spm >= cfg.spm_count)
    throw SimTrap("SPM address beyond window", hart, 0, addr);
  return {spmi, spm, rel % cfg.spm_capacity};
}

VectorCoprocessor::VectorCoprocessor(const CoprocConfig& cfg, PerfCounters& counters)
    : cfg_(cfg), counters_(counters) {
  cfg_.validate();
  storage_.assign(cfg_.spmi_count() * cfg_.spm_count,
                  std::vector<uint8_t>(cfg_.spm_capacity, 0));
  spmi_busy_.assign(cfg_.spmi_count(), 0);
}

VectorCoprocessor::Operand VectorCoprocessor::map_operand(uint32_t addr, uint32_t len,
                                                          int hart, uint64_t) {
  SpmAddress a = map_spm_address(addr, hart, cfg_);
  if (a.offset + static_cast<uint64_t>(len) > cfg_.spm_capacity)
    throw SimTrap("vector operand crosses scratchpad boundary", hart, 0, addr);
  return {spm_ptr(a.spmi, a.spm), a.offset};
}

Availability VectorCoprocessor::availability(const Instruction& i, int hart,
                                             uint64_t now) const {
  if (kind_of(i.op) == InstrKind::VectorTransfer) {
    if (lsu_.busy(now)) return {false, ReplayResource::LSU};
    if (now < spmi_busy_[spmi_of(hart)]) return {false, ReplayResource::SPMI};
    return {};
  }
  switch (cfg_.scheme) {
    case Scheme::SHARED:
      // the paper's wording folds SPMI occupancy into "busy MFU" here
      if (now < mfu_busy_[0] || now < spmi_busy_[0])
        return {false, ReplayResource::MFU};
      return {};
    case Scheme::DEDICATED:
      if (now < mfu_busy_[hart]) return {false, ReplayResource::MFU};
      if (now < spmi_busy_[hart]) return {false, ReplayResource::SPMI};
      return {};
    case Scheme::SHARED_MFU: {
      if (now < spmi_busy_[hart]) return {false, ReplayResource::SPMI};
      FunctionalUnitClass cls = classify_unit(i.op);
      const ClassBusy& cb = class_busy_[static_cast<int>(cls)];
      // the unit datapath is reserved for the streaming window; a new op's
      // stream begins after its own SPM setup latency
      if (now + cfg_.initial_latency < cb.until) return {false, fu_resource(cls)};
      return {};
    }
  }
  return {};
}

uint64_t VectorCoprocessor::issue(const Instruction& i, int hart, HartContext& ctx,
                                  MainMemory& mem, uint64_t now) {
  if (kind_of(i.op) == InstrKind::VectorTransfer)
    return exec_transfer(i, hart, ctx, mem, now);
  return exec_arith(i, hart, ctx, now);
}

uint64_t VectorCoprocessor::exec_arith(const Instruction& i, int hart,
                                       HartContext& ctx, uint64_t now) {
  const uint32_t ew = ctx.ctrl.ewidth;
  if (ew != 8 && ew != 16 && ew != 32)
    throw SimTrap("invalid element width", hart);
  const uint32_t esize = ew / 8;
  const uint32_t vlen = ctx.ctrl.vlen;
  if (vlen == 0 || vlen % esize != 0)
    throw SimTrap("invalid vector length", hart);
  if (ctx.ctrl.pscale > 31) throw SimTrap("pscale out of range", hart);

  const uint32_t nelem = vlen / esize;
  const uint32_t lineb = cfg_.line_bytes();
  const uint64_t lines = (vlen + lineb - 1) / lineb;
  const uint64_t lat = cfg_.initial_latency + lines;
  const uint32_t epl = std::max(1u, lineb / esize);  // elements per line

  FunctionalUnitClass cls = classify_unit(i.op);
  counters_.fu_busy[static_cast<int>(cls)] += lines;
  counters_.vector_ops += 1;
  counters_.vector_lines += lines;
  counters_.mfu_op_cycles += lat;

  // per-line read-before-write elementwise driver
  auto elementwise2 = [&](uint32_t a_addr, uint32_t b_addr, uint32_t c_addr, auto f) {
    Operand a = map_operand(a_addr, vlen, hart, 0);
    Operand b = map_operand(b_addr, vlen, hart, 0);
    Operand c = map_operand(c_addr, vlen, hart, 0);
    counters_.spm_line_reads += 2 * lines;
    counters_.spm_line_writes += lines;
    int64_t av[32], bv[32];
    for (uint32_t e0 = 0; e0 < nelem; e0 += epl) {
      uint32_t cnt = std::min(epl, nelem - e0);
      for (uint32_t k = 0; k < cnt; ++k) {
        av[k] = read_elem(a.base, a.offset + (e0 + k) * esize, ew);
        bv[k] = read_elem(b.base, b.offset + (e0 + k) * esize, ew);
      }
      for (uint32_t k = 0; k < cnt; ++k)
        write_elem(c.base, c.offset + (e0 + k) * esize, ew, f(av[k], bv[k]));
    }
  };
  auto elementwise1 = [&](uint32_t a_addr, uint32_t c_addr, auto f) {
    Operand a = map_operand(a_addr, vlen, hart, 0);
    Operand c = map_operand(c_addr, vlen, hart, 0);
    counters_.spm_line_reads += lines;
    counters_.spm_line_writes += lines;
    int64_t av[32];
    for (uint32_t e0 = 0; e0 < nelem; e0 += epl) {
      uint32_t cnt = std::min(epl, nelem - e0);
      for (uint32_t k = 0; k < cnt; ++k)
        av[k] = read_elem(a.base, a.offset + (e0 + k) * esize, ew);
      for (uint32_t k = 0; k < cnt; ++k)
        write_elem(c.base, c.offset + (e0 + k) * esize, ew, f(av[k]));
    }
  };
  auto reduce = [&](uint32_t a_addr, uint32_t b_addr, bool with_b) {
    Operand a = map_operand(a_addr, vlen, hart, 0);
    Operand b{};
    if (with_b) b = map_operand(b_addr, vlen, hart, 0);
    counters_.spm_line_reads += with_b ? 2 * lines : lines;
    uint64_t acc = 0;
    for (uint32_t k = 0; k < nelem; ++k) {
      int64_t av = read_elem(a.base, a.offset + k * esize, ew);
      int64_t bv = with_b ? read_elem(b.base, b.offset + k * esize, ew) : 1;
      acc += static_cast<uint64_t>(av * bv);
    }
    return acc;
  };

  const uint32_t rd = ctx.reg(i.rd), rs1 = ctx.reg(i.rs1), rs2 = ctx.reg(i.rs2);

  switch (i.op) {
    case Op::KADDV:
      elementwise2(rs1, rs2, rd, [](int64_t a, int64_t b) { return a + b; });
      break;
    case Op::KSUBV:
      elementwise2(rs1, rs2, rd, [](int64_t a, int64_t b) { return a - b; });
      break;
    case Op::KVMUL:
      elementwise2(rs1, rs2, rd, [](int64_t a, int64_t b) { return a * b; });
      break;
    case Op::KVSLT:
      elementwise2(rs1, rs2, rd, [](int64_t a, int64_t b) { return a < b ? 1 : 0; });
      break;
    case Op::KVRED: {
      uint64_t acc = reduce(rs1, 0, false);
      Operand c = map_operand(rd, esize, hart, 0);
      counters_.spm_line_writes += 1;
      write_elem(c.base, c.offset, ew, static_cast<int32_t>(acc));
      break;
    }
    case Op::KDOTP:
    case Op::KDOTPPS: {
      uint64_t acc = reduce(rs1, rs2, true);
      int64_t v = std::bit_cast<int64_t>(acc);
      if (i.op == Op::KDOTPPS) v >>= ctx.ctrl.pscale;
      pending_[hart] = PendingWrite{i.rd, static_cast<uint32_t>(v), now + lat};
      break;
    }
    case Op::KSVADDSC:
    case Op::KSVMULS: {
      Operand sp = map_operand(rs2, esize, hart, 0);
      counters_.spm_line_reads += 1;
      int64_t s = read_elem(sp.base, sp.offset, ew);
      if (i.op == Op::KSVADDSC)
        elementwise1(rs1, rd, [s](int64_t a) { return a + s; });
      else
        elementwise1(rs1, rd, [s](int64_t a) { return a * s; });
      break;
    }
    case Op::KSVADDRF: {
      int64_t s = sext(rs2, ew);
      elementwise1(rs1, rd, [s](int64_t a) { return a + s; });
      break;
    }
    case Op::KSVMULRF: {
      int64_t s = sext(rs2, ew);
      elementwise1(rs1, rd, [s](int64_t a) { return a * s; });
      break;
    }
    case Op::KSVSLT: {
      int64_t s = sext(rs2, ew);
      elementwise1(rs1, rd, [s](int64_t a) { return a < s ? 1 : 0; });
      break;
    }
    case Op::KSRLV: {
      uint32_t sh = rs2 % ew;
      uint32_t mask = ew == 32 ? 0xFFFFFFFFu : (1u << ew) - 1;
      elementwise1(rs1, rd, [sh, mask](int64_t a) {
        return static_cast<int64_t>((static_cast<uint32_t>(a) & mask) >> sh);
      });
      break;
    }
    case Op::KSRAV: {
      uint32_t sh = rs2 % ew;
      elementwise1(rs1, rd, [sh](int64_t a) { return a >> sh; });
      break;
    }
    case Op::KRELU:
      elementwise1(rs1, rd, [](int64_t a) { return a < 0 ? 0 : a; });
      break;
    case Op::KVCP:
      elementwise1(rs1, rd, [](int64_t a) { return a; });
      break;
    default:
      throw SimTrap("not a vector arithmetic op", hart);
  }

  // occupancy
  spmi_busy_[spmi_of(hart)] = now + lat;
  switch (cfg_.scheme) {
    case Scheme::SHARED:
      mfu_busy_[0] = now + lat;
      break;
    case Scheme::DEDICATED:
      mfu_busy_[hart] = now + lat;
      break;
    case Scheme::SHARED_MFU:
      class_busy_[static_cast<int>(cls)] = {now + lat - lines, now + lat, hart};
      break;
  }
  return lat;
}

uint64_t VectorCoprocessor::exec_transfer(const Instruction& i, int hart,
                                          HartContext& ctx, MainMemory& mem,
                                          uint64_t now) {
  const uint32_t count = ctx.reg(i.rs2);
  if (count == 0) throw SimTrap("vector transfer with zero byte count", hart);

  const uint32_t main_limit = std::min(mem.size(), cfg_.spm_base);
  auto check_main = [&](uint32_t addr) {
    if (addr >= main_limit || main_limit - addr < count)
      throw SimTrap("transfer main-memory range out of bounds", hart, 0, addr);
  };

  const uint64_t lat = transfer_cycles(count, cfg_.initial_latency);
  const uint32_t lineb = cfg_.line_bytes();
  const uint64_t lines = (count + lineb - 1) / lineb;
  counters_.mem_port_words += (count + 3) / 4;

  if (i.op == Op::KMEMLD) {
    uint32_t dst = ctx.reg(i.rd), src = ctx.reg(i.rs1);
    check_main(src);
    Operand d = map_operand(dst, count, hart, 0);
    for (uint32_t b = 0; b < count; ++b) d.base[d.offset + b] = mem.data()[src + b];
    counters_.spm_line_writes += lines;
  } else {
    uint32_t dst = ctx.reg(i.rd), src = ctx.reg(i.rs1);
    check_main(dst);
    Operand s = map_operand(src, count, hart, 0);
    for (uint32_t b = 0; b < count; ++b) mem.data()[dst + b] = s.base[s.offset + b];
    counters_.spm_line_reads += lines;
  }

  lsu_.busy_until = now + lat;
  lsu_.stream_from = now + cfg_.initial_latency;
  lsu_.active_hart = hart;
  spmi_busy_[spmi_of(hart)] = now + lat;
  return lat;
}

uint32_t VectorCoprocessor::spm_word(uint32_t spmi, uint32_t spm, uint32_t offset) const {
  const uint8_t* p = spm_ptr(spmi, spm);
  return static_cast<uint32_t>(p[offset]) |
         (static_cast<uint32_t>(p[offset + 1]) << 8) |
         (static_cast<uint32_t>(p[offset + 2]) << 16) |
         (static_cast<uint32_t>(p[offset + 3]) << 24);
}

std::vector<uint32_t> VectorCoprocessor::dump_spm(uint32_t spmi, uint32_t spm) const {
  std::vector<uint32_t> out(cfg_.spm_capacity / 4);
  for (uint32_t w = 0; w < out.size(); ++w) out[w] = spm_word(spmi, spm, 4 * w);
  return out;
}

std::vector<uint8_t> VectorCoprocessor::read_range(int hart, uint32_t addr,
                                                   uint32_t len) const {
  std::vector<uint8_t> out(len);
  for (uint32_t b = 0; b < len; ++b) {
    SpmAddress a = map_spm_address(addr + b, hart, cfg_);
    out[b] = spm_ptr(a.spmi, a.spm)[a.offset];
  }
  return out;
}

}  // namespace imtvec
