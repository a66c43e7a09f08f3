#include "imtvec/isa.hpp"

#include <stdexcept>

namespace imtvec {

const char* op_name(Op op) {
  switch (op) {
    case Op::ADD: return "add";
    case Op::SUB: return "sub";
    case Op::SLL: return "sll";
    case Op::SLT: return "slt";
    case Op::SLTU: return "sltu";
    case Op::XOR: return "xor";
    case Op::SRL: return "srl";
    case Op::SRA: return "sra";
    case Op::OR: return "or";
    case Op::AND: return "and";
    case Op::ADDI: return "addi";
    case Op::SLTI: return "slti";
    case Op::SLTIU: return "sltiu";
    case Op::XORI: return "xori";
    case Op::ORI: return "ori";
    case Op::ANDI: return "andi";
    case Op::SLLI: return "slli";
    case Op::SRLI: return "srli";
    case Op::SRAI: return "srai";
    case Op::LB: return "lb";
    case Op::LH: return "lh";
    case Op::LW: return "lw";
    case Op::LBU: return "lbu";
    case Op::LHU: return "lhu";
    case Op::SB: return "sb";
    case Op::SH: return "sh";
    case Op::SW: return "sw";
    case Op::BEQ: return "beq";
    case Op::BNE: return "bne";
    case Op::BLT: return "blt";
    case Op::BGE: return "bge";
    case Op::BLTU: return "bltu";
    case Op::BGEU: return "bgeu";
    case Op::JAL: return "jal";
    case Op::JALR: return "jalr";
    case Op::LUI: return "lui";
    case Op::AUIPC: return "auipc";
    case Op::CSRRW: return "csrrw";
    case Op::CSRRS: return "csrrs";
    case Op::CSRRC: return "csrrc";
    case Op::MUL: return "mul";
    case Op::MULH: return "mulh";
    case Op::MULHSU: return "mulhsu";
    case Op::MULHU: return "mulhu";
    case Op::DIV: return "div";
    case Op::DIVU: return "divu";
    case Op::REM: return "rem";
    case Op::REMU: return "remu";
    case Op::EBREAK: return "ebreak";
    case Op::KMEMLD: return "kmemld";
    case Op::KMEMSTR: return "kmemstr";
    case Op::KADDV: return "kaddv";
    case Op::KSUBV: return "ksubv";
    case Op::KVMUL: return "kvmul";
    case Op::KVRED: return "kvred";
    case Op::KDOTP: return "kdotp";
    case Op::KSVADDSC: return "ksvaddsc";
    case Op::KSVADDRF: return "ksvaddrf";
    case Op::KSVMULS: return "ksvmuls";
    case Op::KSVMULRF: return "ksvmulrf";
    case Op::KDOTPPS: return "kdotpps";
    case Op::KSRLV: return "ksrlv";
    case Op::KSRAV: return "ksrav";
    case Op::KRELU: return "krelu";
    case Op::KVSLT: return "kvslt";
    case Op::KSVSLT: return "ksvslt";
    case Op::KVCP: return "kvcp";
  }
  return "?";
}

InstrKind kind_of(Op op) {
  switch (op) {
    case Op::ADD: case Op::SUB: case Op::SLL: case Op::SLT: case Op::SLTU:
    case Op::XOR: case Op::SRL: case Op::SRA: case Op::OR: case Op::AND:
      return InstrKind::AluReg;
    case Op::ADDI: case Op::SLTI: case Op::SLTIU: case Op::XORI:
    case Op::ORI: case Op::ANDI: case Op::SLLI: case Op::SRLI: case Op::SRAI:
      return InstrKind::AluImm;
    case Op::LB: case Op::LH: case Op::LW: case Op::LBU: case Op::LHU:
      return InstrKind::Load;
    case Op::SB: case Op::SH: case Op::SW:
      return InstrKind::Store;
    case Op::BEQ: case Op::BNE: case Op::BLT: case Op::BGE:
    case Op::BLTU: case Op::BGEU:
      return InstrKind::Branch;
    case Op::JAL:
      return InstrKind::Jump;
    case Op::JALR:
      return InstrKind::JumpReg;
    case Op::LUI: case Op::AUIPC:
      return InstrKind::UpperImm;
    case Op::CSRRW: case Op::CSRRS: case Op::CSRRC:
      return InstrKind::Csr;
    case Op::MUL: case Op::MULH: case Op::MULHSU: case Op::MULHU:
    case Op::DIV: case Op::DIVU: case Op::REM: case Op::REMU:
      return InstrKind::MulDiv;
    case Op::EBREAK:
      return InstrKind::Halt;
    case Op::KMEMLD: case Op::KMEMSTR:
      return InstrKind::VectorTransfer;
    default:
      return InstrKind::VectorArith;
  }
}

bool writes_register(Op op) {
  return op == Op::KDOTP || op == Op::KDOTPPS;
}

FunctionalUnitClass classify_unit(Op op) {
  switch (op) {
    case Op::KADDV: case Op::KSUBV: case Op::KVRED:
    case Op::KSVADDSC: case Op::KSVADDRF:
      return FunctionalUnitClass::ADDER;
    case Op::KVMUL: case Op::KSVMULS: case Op::KSVMULRF:
    case Op::KDOTP: case Op::KDOTPPS:
      return FunctionalUnitClass::MULTIPLIER;
    case Op::KSRLV: case Op::KSRAV:
      return FunctionalUnitClass::SHIFTER;
    case Op::KRELU: case Op::KVSLT: case Op::KSVSLT:
      return FunctionalUnitClass::COMPARE;
    case Op::KVCP:
      return FunctionalUnitClass::MOVE;
    default:
      throw std::invalid_argument(std::string("classify_unit: ") + op_name(op) +
                                  " does not occupy an MFU functional unit");
  }
}

}  // namespace imtvec
