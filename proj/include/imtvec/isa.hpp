#ifndef IMTVEC_ISA_HPP
#define IMTVEC_ISA_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace imtvec {

// Decoded operations. Binary encodings are not modeled; programs exist in
// decoded form only.
enum class Op : uint8_t {
  // ALU register-register
  ADD, SUB, SLL, SLT, SLTU, XOR, SRL, SRA, OR, AND,
  // ALU immediate
  ADDI, SLTI, SLTIU, XORI, ORI, ANDI, SLLI, SRLI, SRAI,
  // loads / stores
  LB, LH, LW, LBU, LHU, SB, SH, SW,
  // control transfer
  BEQ, BNE, BLT, BGE, BLTU, BGEU, JAL, JALR,
  // upper immediate
  LUI, AUIPC,
  // CSR access (csr id in imm)
  CSRRW, CSRRS, CSRRC,
  // M extension
  MUL, MULH, MULHSU, MULHU, DIV, DIVU, REM, REMU,
  // halt convention (bare-metal exit)
  EBREAK,
  // custom vector extension
  KMEMLD, KMEMSTR,
  KADDV, KSUBV, KVMUL, KVRED, KDOTP,
  KSVADDSC, KSVADDRF, KSVMULS, KSVMULRF, KDOTPPS,
  KSRLV, KSRAV, KRELU, KVSLT, KSVSLT, KVCP,
};

enum class InstrKind : uint8_t {
  AluReg, AluImm, Load, Store, Branch, Jump, JumpReg,
  UpperImm, Csr, MulDiv, Halt, VectorTransfer, VectorArith,
};

enum class FunctionalUnitClass : uint8_t {
  ADDER, MULTIPLIER, SHIFTER, COMPARE, MOVE,
};
inline constexpr int kNumFuClasses = 5;

struct Instruction {
  Op op = Op::ADDI;
  uint8_t rd = 0;
  uint8_t rs1 = 0;
  uint8_t rs2 = 0;
  int32_t imm = 0;  // scalar kinds only; vector kinds carry imm = 0

  bool operator==(const Instruction&) const = default;
};

const char* op_name(Op op);
InstrKind kind_of(Op op);

inline bool is_coprocessor(Op op) { return op >= Op::KMEMLD; }
inline bool is_coprocessor(const Instruction& i) { return is_coprocessor(i.op); }

// True for the vector kinds that deposit their result in the integer
// register file rather than a scratchpad.
bool writes_register(Op op);
inline bool writes_register(const Instruction& i) { return writes_register(i.op); }

// Maps an arithmetic vector op onto the MFU unit it occupies. Rejects
// scalar kinds and the two LSU transfer kinds.
FunctionalUnitClass classify_unit(Op op);
inline FunctionalUnitClass classify_unit(const Instruction& i) { return classify_unit(i.op); }

// Vector kinds that take only (rd),(rs1) per Table-1 arity.
inline bool is_two_operand_vector(Op op) {
  return op == Op::KVRED || op == Op::KRELU || op == Op::KVCP;
}

// CSR ids. cyclecount and hartid are read-only.
namespace csr {
inline constexpr uint32_t kVlen = 0x7C0;
inline constexpr uint32_t kEwidth = 0x7C1;
inline constexpr uint32_t kPscale = 0x7C2;
inline constexpr uint32_t kCyclecount = 0xC00;
inline constexpr uint32_t kHartid = 0xF14;
}  // namespace csr

struct ControlRegisters {
  uint32_t vlen = 0;    // vector length in bytes
  uint32_t ewidth = 32; // element width in bits: 8, 16 or 32
  uint32_t pscale = 0;  // post-scaling right shift for kdotpps, 0..31
};

struct HartContext {
  std::array<uint32_t, 32> regs{};
  uint32_t pc = 0;
  ControlRegisters ctrl;

  uint32_t reg(unsigned idx) const { return idx == 0 ? 0u : regs[idx]; }
  void set_reg(unsigned idx, uint32_t value) {
    if (idx != 0) regs[idx] = value;
  }
};

struct Program {
  std::vector<Instruction> instrs;
  std::map<std::string, uint32_t> labels;  // name -> instruction index
  uint32_t origin = 0;                     // base byte address

  bool pc_in_range(uint32_t pc) const {
    return pc >= origin && pc < origin + 4 * instrs.size() && (pc & 3u) == 0;
  }
  const Instruction& at_pc(uint32_t pc) const { return instrs[(pc - origin) / 4]; }
  uint32_t pc_of_index(uint32_t index) const { return origin + 4 * index; }
};

}  // namespace imtvec

#endif  // IMTVEC_ISA_HPP
