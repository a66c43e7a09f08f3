#include "imtvec/assembler.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

namespace imtvec {
namespace {

const std::map<std::string, int>& abi_names() {
  static const std::map<std::string, int> names = [] {
    std::map<std::string, int> m;
    for (int i = 0; i < 32; ++i) m["x" + std::to_string(i)] = i;
    m["zero"] = 0; m["ra"] = 1; m["sp"] = 2; m["gp"] = 3; m["tp"] = 4;
    m["t0"] = 5; m["t1"] = 6; m["t2"] = 7;
    m["s0"] = 8; m["fp"] = 8; m["s1"] = 9;
    for (int i = 0; i < 8; ++i) m["a" + std::to_string(i)] = 10 + i;
    for (int i = 2; i < 12; ++i) m["s" + std::to_string(i)] = 16 + i;
    for (int i = 3; i < 7; ++i) m["t" + std::to_string(i)] = 25 + i;
    return m;
  }();
  return names;
}

const std::map<std::string, uint32_t>& csr_names() {
  static const std::map<std::string, uint32_t> m = {
      {"vlen", csr::kVlen},       {"ewidth", csr::kEwidth},
      {"pscale", csr::kPscale},   {"cyclecount", csr::kCyclecount},
      {"hartid", csr::kHartid},
  };
  return m;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_int(const std::string& s, int64_t& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(t, &pos, 0);  // base 0: decimal, 0x hex, 0 octal
  } catch (...) {
    return false;
  }
  return pos == t.size();
}

enum class OperandKind { Reg, ParenReg, Imm, Mem, Sym };

struct Operand {
  OperandKind kind;
  int reg = 0;
  int64_t imm = 0;
  std::string sym;
};

struct ParsedLine {
  std::string label;     // empty if none
  std::string mnemonic;  // empty if label-only / blank
  std::vector<Operand> operands;
  bool directive = false;
};

// One emitted instruction awaiting label resolution.
struct Pending {
  Instruction instr;
  int line = 0;
  std::string target;      // branch/jump label to resolve (empty if none)
  bool is_jal = false;     // else branch, for range checking
};

struct Assembler {
  std::vector<AsmDiagnostic> diags;
  std::vector<Pending> out;
  std::map<std::string, uint32_t> labels;
  std::vector<DataWord> data;
  uint32_t data_cursor = 0;

  void error(int line, const std::string& msg) {
    diags.push_back({line, AsmDiagnostic::Severity::Error, msg});
  }

  std::optional<ParsedLine> parse_line(const std::string& raw, int lineno) {
    std::string s = raw.substr(0, raw.find('#'));
    s = trim(s);
    if (s.empty()) return std::nullopt;

    ParsedLine pl;
    // optional leading "label:"
    size_t colon = s.find(':');
    if (colon != std::string::npos) {
      std::string head = trim(s.substr(0, colon));
      bool ident = !head.empty() &&
                   std::all_of(head.begin(), head.end(), [](unsigned char c) {
                     return std::isalnum(c) || c == '_' || c == '.';
                   });
      if (ident) {
        pl.label = head;
        s = trim(s.substr(colon + 1));
      }
    }
    if (s.empty()) return pl;

    size_t ws = s.find_first_of(" \t");
    pl.mnemonic = s.substr(0, ws);
    std::transform(pl.mnemonic.begin(), pl.mnemonic.end(), pl.mnemonic.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    pl.directive = pl.mnemonic[0] == '.';
    std::string rest = ws == std::string::npos ? "" : trim(s.substr(ws));

    // split on commas
    std::vector<std::string> parts;
    if (!rest.empty()) {
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    }
    for (const auto& p : parts) {
      if (p.empty()) {
        error(lineno, "empty operand");
        return std::nullopt;
      }
      Operand op;
      if (p.front() == '(' && p.back() == ')') {
        int r = parse_register(trim(p.substr(1, p.size() - 2)));
        if (r < 0) {
          error(lineno, "bad register in '" + p + "'");
          return std::nullopt;
        }
        op.kind = OperandKind::ParenReg;
        op.reg = r;
      } else if (p.back() == ')' && p.find('(') != std::string::npos) {
        size_t lp = p.find('(');
        int64_t off = 0;
        std::string offs = trim(p.substr(0, lp));
        if (!offs.empty() && !parse_int(offs, off)) {
          error(lineno, "bad offset in '" + p + "'");
          return std::nullopt;
        }
        int r = parse_register(trim(p.substr(lp + 1, p.size() - lp - 2)));
        if (r < 0) {
          error(lineno, "bad register in '" + p + "'");
          return std::nullopt;
        }
        op.kind = OperandKind::Mem;
        op.reg = r;
        op.imm = off;
      } else if (int r = parse_register(p); r >= 0) {
        op.kind = OperandKind::Reg;
        op.reg = r;
      } else if (int64_t v; parse_int(p, v)) {
        op.kind = OperandKind::Imm;
        op.imm = v;
      } else {
        op.kind = OperandKind::Sym;
        op.sym = p;
      }
      pl.operands.push_back(op);
    }
    return pl;
  }

  // How many instructions a line expands to (pass 1 sizing).
  int size_of(const ParsedLine& pl, int lineno) {
    if (pl.mnemonic.empty() || pl.directive) return 0;
    if (pl.mnemonic == "li") {
      if (pl.operands.size() == 2 && pl.operands[1].kind == OperandKind::Imm) {
        int64_t v = pl.operands[1].imm;
        return (v >= -2048 && v <= 2047) ? 1 : 2;
      }
      return 1;  // malformed; pass 2 reports
    }
    (void)lineno;
    return 1;
  }

  bool want(const ParsedLine& pl, int lineno, size_t n) {
    if (pl.operands.size() != n) {
      error(lineno, pl.mnemonic + " expects " + std::to_string(n) +
                        " operands, got " + std::to_string(pl.operands.size()));
      return false;
    }
    return true;
  }

  std::optional<int> reg_at(const ParsedLine& pl, int lineno, size_t i) {
    if (pl.operands[i].kind != OperandKind::Reg) {
      error(lineno, "operand " + std::to_string(i + 1) + " of " + pl.mnemonic +
                        " must be a bare register");
      return std::nullopt;
    }
    return pl.operands[i].reg;
  }

  std::optional<int> preg_at(const ParsedLine& pl, int lineno, size_t i) {
    if (pl.operands[i].kind != OperandKind::ParenReg) {
      error(lineno, "operand " + std::to_string(i + 1) + " of " + pl.mnemonic +
                        " must be a parenthesized register");
      return std::nullopt;
    }
    return pl.operands[i].reg;
  }

  std::optional<int64_t> imm_at(const ParsedLine& pl, int lineno, size_t i,
                                int64_t lo, int64_t hi) {
    if (pl.operands[i].kind != OperandKind::Imm) {
      error(lineno, "operand " + std::to_string(i + 1) + " of " + pl.mnemonic +
                        " must be an immediate");
      return std::nullopt;
    }
    int64_t v = pl.operands[i].imm;
    if (v < lo || v > hi) {
      error(lineno, "immediate " + std::to_string(v) + " out of range [" +
                        std::to_string(lo) + "," + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return v;
  }

  void emit(Op op, int rd, int rs1, int rs2, int32_t imm, int lineno,
            const std::string& target = "", bool is_jal = false) {
    Pending p;
    p.instr = {op, static_cast<uint8_t>(rd), static_cast<uint8_t>(rs1),
               static_cast<uint8_t>(rs2), imm};
    p.line = lineno;
    p.target = target;
    p.is_jal = is_jal;
    out.push_back(p);
  }

  // Branch/jump target: label or immediate byte offset.
  void emit_cti(Op op, int rd, int rs1, int rs2, const Operand& tgt, int lineno) {
    bool jal = op == Op::JAL;
    if (tgt.kind == OperandKind::Sym) {
      emit(op, rd, rs1, rs2, 0, lineno, tgt.sym, jal);
    } else if (tgt.kind == OperandKind::Imm) {
      emit(op, rd, rs1, rs2, static_cast<int32_t>(tgt.imm), lineno, "", jal);
    } else {
      error(lineno, "bad branch target");
    }
  }

  void assemble_line(const ParsedLine& pl, int lineno) {
    const std::string& m = pl.mnemonic;
    if (pl.directive) {
      if (m == ".org") {
        if (!want(pl, lineno, 1)) return;
        if (auto v = imm_at(pl, lineno, 0, 0, 0xFFFFFFFFll)) data_cursor = static_cast<uint32_t>(*v);
      } else if (m == ".word") {
        if (!want(pl, lineno, 1)) return;
        if (pl.operands[0].kind != OperandKind::Imm) {
          error(lineno, ".word expects an immediate");
          return;
        }
        data.push_back({data_cursor, static_cast<uint32_t>(pl.operands[0].imm)});
        data_cursor += 4;
      } else {
        error(lineno, "unknown directive " + m);
      }
      return;
    }

    static const std::map<std::string, Op> alu_rrr = {
        {"add", Op::ADD}, {"sub", Op::SUB}, {"sll", Op::SLL}, {"slt", Op::SLT},
        {"sltu", Op::SLTU}, {"xor", Op::XOR}, {"srl", Op::SRL}, {"sra", Op::SRA},
        {"or", Op::OR}, {"and", Op::AND},
        {"mul", Op::MUL}, {"mulh", Op::MULH}, {"mulhsu", Op::MULHSU},
        {"mulhu", Op::MULHU}, {"div", Op::DIV}, {"divu", Op::DIVU},
        {"rem", Op::REM}, {"remu", Op::REMU}};
    static const std::map<std::string, Op> alu_rri = {
        {"addi", Op::ADDI}, {"slti", Op::SLTI}, {"sltiu", Op::SLTIU},
        {"xori", Op::XORI}, {"ori", Op::ORI}, {"andi", Op::ANDI}};
    static const std::map<std::string, Op> shifts_i = {
        {"slli", Op::SLLI}, {"srli", Op::SRLI}, {"srai", Op::SRAI}};
    static const std::map<std::string, Op> loads = {
        {"lb", Op::LB}, {"lh", Op::LH}, {"lw", Op::LW},
        {"lbu", Op::LBU}, {"lhu", Op::LHU}};
    static const std::map<std::string, Op> stores = {
        {"sb", Op::SB}, {"sh", Op::SH}, {"sw", Op::SW}};
    static const std::map<std::string, Op> branches = {
        {"beq", Op::BEQ}, {"bne", Op::BNE}, {"blt", Op::BLT},
        {"bge", Op::BGE}, {"bltu", Op::BLTU}, {"bgeu", Op::BGEU}};
    static const std::map<std::string, Op> csrs = {
        {"csrrw", Op::CSRRW}, {"csrrs", Op::CSRRS}, {"csrrc", Op::CSRRC}};
    // Vector mnemonics: third-operand style per Table 1. P = parenthesized,
    // R = bare register, B = either (kmemld/kmemstr byte count).
    struct VecForm { Op op; int arity; char third; };
    static const std::map<std::string, VecForm> vectors = {
        {"kmemld", {Op::KMEMLD, 3, 'B'}},   {"kmemstr", {Op::KMEMSTR, 3, 'B'}},
        {"kaddv", {Op::KADDV, 3, 'P'}},     {"ksubv", {Op::KSUBV, 3, 'P'}},
        {"kvmul", {Op::KVMUL, 3, 'P'}},     {"kvred", {Op::KVRED, 2, ' '}},
        {"kdotp", {Op::KDOTP, 3, 'P'}},     {"ksvaddsc", {Op::KSVADDSC, 3, 'P'}},
        {"ksvaddrf", {Op::KSVADDRF, 3, 'R'}}, {"ksvmuls", {Op::KSVMULS, 3, 'P'}},
        {"ksvmulrf", {Op::KSVMULRF, 3, 'R'}}, {"kdotpps", {Op::KDOTPPS, 3, 'P'}},
        {"ksrlv", {Op::KSRLV, 3, 'R'}},     {"ksrav", {Op::KSRAV, 3, 'R'}},
        {"krelu", {Op::KRELU, 2, ' '}},     {"kvcp", {Op::KVCP, 2, ' '}},
        {"kvslt", {Op::KVSLT, 3, 'P'}},
        // Table 1 spells both compare forms "ksvslt"; the parenthesization of
        // the third operand selects vector-vector (kvslt) vs vector-scalar.
    };

    if (auto it = alu_rrr.find(m); it != alu_rrr.end()) {
      if (!want(pl, lineno, 3)) return;
      auto rd = reg_at(pl, lineno, 0), rs1 = reg_at(pl, lineno, 1), rs2 = reg_at(pl, lineno, 2);
      if (rd && rs1 && rs2) emit(it->second, *rd, *rs1, *rs2, 0, lineno);
    } else if (auto it = alu_rri.find(m); it != alu_rri.end()) {
      if (!want(pl, lineno, 3)) return;
      auto rd = reg_at(pl, lineno, 0), rs1 = reg_at(pl, lineno, 1);
      auto imm = imm_at(pl, lineno, 2, -2048, 2047);
      if (rd && rs1 && imm) emit(it->second, *rd, *rs1, 0, static_cast<int32_t>(*imm), lineno);
    } else if (auto it = shifts_i.find(m); it != shifts_i.end()) {
      if (!want(pl, lineno, 3)) return;
      auto rd = reg_at(pl, lineno, 0), rs1 = reg_at(pl, lineno, 1);
      auto imm = imm_at(pl, lineno, 2, 0, 31);
      if (rd && rs1 && imm) emit(it->second, *rd, *rs1, 0, static_cast<int32_t>(*imm), lineno);
    } else if (auto it = loads.find(m); it != loads.end()) {
      if (!want(pl, lineno, 2)) return;
      auto rd = reg_at(pl, lineno, 0);
      if (!rd) return;
      if (pl.operands[1].kind != OperandKind::Mem) {
        error(lineno, m + " expects offset(base) operand");
        return;
      }
      int64_t off = pl.operands[1].imm;
      if (off < -2048 || off > 2047) { error(lineno, "load offset out of range"); return; }
      emit(it->second, *rd, pl.operands[1].reg, 0, static_cast<int32_t>(off), lineno);
    } else if (auto it = stores.find(m); it != stores.end()) {
      if (!want(pl, lineno, 2)) return;
      auto rs2 = reg_at(pl, lineno, 0);
      if (!rs2) return;
      if (pl.operands[1].kind != OperandKind::Mem) {
        error(lineno, m + " expects offset(base) operand");
        return;
      }
      int64_t off = pl.operands[1].imm;
      if (off < -2048 || off > 2047) { error(lineno, "store offset out of range"); return; }
      emit(it->second, 0, pl.operands[1].reg, *rs2, static_cast<int32_t>(off), lineno);
    } else if (auto it = branches.find(m); it != branches.end()) {
      if (!want(pl, lineno, 3)) return;
      auto rs1 = reg_at(pl, lineno, 0), rs2 = reg_at(pl, lineno, 1);
      if (rs1 && rs2) emit_cti(it->second, 0, *rs1, *rs2, pl.operands[2], lineno);
    } else if (m == "jal") {
      if (!want(pl, lineno, 2)) return;
      auto rd = reg_at(pl, lineno, 0);
      if (rd) emit_cti(Op::JAL, *rd, 0, 0, pl.operands[1], lineno);
    } else if (m == "jalr") {
      if (!want(pl, lineno, 3)) return;
      auto rd = reg_at(pl, lineno, 0), rs1 = reg_at(pl, lineno, 1);
      auto imm = imm_at(pl, lineno, 2, -2048, 2047);
      if (rd && rs1 && imm) emit(Op::JALR, *rd, *rs1, 0, static_cast<int32_t>(*imm), lineno);
    } else if (m == "lui" || m == "auipc") {
      if (!want(pl, lineno, 2)) return;
      auto rd = reg_at(pl, lineno, 0);
      auto imm = imm_at(pl, lineno, 1, 0, 0xFFFFF);
      if (rd && imm)
        emit(m == "lui" ? Op::LUI : Op::AUIPC, *rd, 0, 0, static_cast<int32_t>(*imm), lineno);
    } else if (auto it = csrs.find(m); it != csrs.end()) {
      if (!want(pl, lineno, 3)) return;
      auto rd = reg_at(pl, lineno, 0);
      if (!rd) return;
      uint32_t id;
      const Operand& c = pl.operands[1];
      if (c.kind == OperandKind::Sym && csr_names().count(c.sym)) {
        id = csr_names().at(c.sym);
      } else if (c.kind == OperandKind::Imm) {
        id = static_cast<uint32_t>(c.imm);
      } else {
        error(lineno, "unknown CSR name in " + m);
        return;
      }
      auto rs1 = reg_at(pl, lineno, 2);
      if (rs1) emit(it->second, *rd, *rs1, 0, static_cast<int32_t>(id), lineno);
    } else if (m == "ebreak") {
      if (!want(pl, lineno, 0)) return;
      emit(Op::EBREAK, 0, 0, 0, 0, lineno);
    } else if (auto it = vectors.find(m); it != vectors.end()) {
      const VecForm& f = it->second;
      if (!want(pl, lineno, static_cast<size_t>(f.arity))) return;
      auto rd = preg_at(pl, lineno, 0), rs1 = preg_at(pl, lineno, 1);
      if (!rd || !rs1) return;
      if (f.arity == 2) {
        emit(f.op, *rd, *rs1, 0, 0, lineno);
        return;
      }
      const Operand& third = pl.operands[2];
      Op op = f.op;
      int rs2;
      if (f.third == 'P') {
        auto r = preg_at(pl, lineno, 2);
        if (!r) return;
        rs2 = *r;
      } else if (f.third == 'R') {
        auto r = reg_at(pl, lineno, 2);
        if (!r) return;
        rs2 = *r;
      } else {  // 'B': byte count, either form accepted
        if (third.kind == OperandKind::Reg || third.kind == OperandKind::ParenReg) {
          rs2 = third.reg;
        } else {
          error(lineno, "operand 3 of " + m + " must be a register");
          return;
        }
      }
      emit(op, *rd, *rs1, rs2, 0, lineno);
    } else if (m == "ksvslt") {
      // arity checked here because the third operand chooses the kind
      if (!want(pl, lineno, 3)) return;
      auto rd = preg_at(pl, lineno, 0), rs1 = preg_at(pl, lineno, 1);
      if (!rd || !rs1) return;
      const Operand& third = pl.operands[2];
      if (third.kind == OperandKind::ParenReg) {
        emit(Op::KVSLT, *rd, *rs1, third.reg, 0, lineno);
      } else if (third.kind == OperandKind::Reg) {
        emit(Op::KSVSLT, *rd, *rs1, third.reg, 0, lineno);
      } else {
        error(lineno, "operand 3 of ksvslt must be a register");
      }
    } else if (m == "li") {
      if (!want(pl, lineno, 2)) return;
      auto rd = reg_at(pl, lineno, 0);
      if (!rd) return;
      if (pl.operands[1].kind != OperandKind::Imm) {
        error(lineno, "li expects an immediate");
        return;
      }
      int64_t v = pl.operands[1].imm;
      if (v < INT32_MIN || v > static_cast<int64_t>(UINT32_MAX)) {
        error(lineno, "li immediate out of 32-bit range");
        return;
      }
      int32_t iv = static_cast<int32_t>(v);
      if (iv >= -2048 && iv <= 2047) {
        emit(Op::ADDI, *rd, 0, 0, iv, lineno);
      } else {
        uint32_t uv = static_cast<uint32_t>(iv);
        uint32_t hi = (uv + 0x800u) >> 12;
        int32_t lo = static_cast<int32_t>(uv - (hi << 12));
        emit(Op::LUI, *rd, 0, 0, static_cast<int32_t>(hi & 0xFFFFF), lineno);
        emit(Op::ADDI, *rd, *rd, 0, lo, lineno);
      }
    } else if (m == "mv") {
      if (!want(pl, lineno, 2)) return;
      auto rd = reg_at(pl, lineno, 0), rs = reg_at(pl, lineno, 1);
      if (rd && rs) emit(Op::ADDI, *rd, *rs, 0, 0, lineno);
    } else if (m == "j") {
      if (!want(pl, lineno, 1)) return;
      emit_cti(Op::JAL, 0, 0, 0, pl.operands[0], lineno);
    } else if (m == "nop") {
      if (!want(pl, lineno, 0)) return;
      emit(Op::ADDI, 0, 0, 0, 0, lineno);
    } else if (m == "ret") {
      if (!want(pl, lineno, 0)) return;
      emit(Op::JALR, 0, 1, 0, 0, lineno);
    } else {
      error(lineno, "unknown mnemonic '" + m + "'");
    }
  }
};

}  // namespace

int parse_register(const std::string& name) {
  auto it = abi_names().find(name);
  return it == abi_names().end() ? -1 : it->second;
}

AsmResult assemble(const SourceUnit& src, uint32_t origin) {
  Assembler as;
  std::vector<std::pair<ParsedLine, int>> parsed;

  // pass 1: parse, size, collect labels
  uint32_t index = 0;
  for (size_t i = 0; i < src.lines.size(); ++i) {
    int lineno = static_cast<int>(i) + 1;
    auto pl = as.parse_line(src.lines[i], lineno);
    if (!pl) continue;
    if (!pl->label.empty()) {
      if (as.labels.count(pl->label))
        as.error(lineno, "duplicate label '" + pl->label + "'");
      else
        as.labels[pl->label] = index;
    }
    if (!pl->mnemonic.empty()) {
      index += as.size_of(*pl, lineno);
      parsed.emplace_back(std::move(*pl), lineno);
    }
  }

  // pass 2: emit
  for (auto& [pl, lineno] : parsed) as.assemble_line(pl, lineno);

  // resolve labels to pc-relative offsets
  for (size_t i = 0; i < as.out.size(); ++i) {
    Pending& p = as.out[i];
    if (p.target.empty()) continue;
    auto it = as.labels.find(p.target);
    if (it == as.labels.end()) {
      as.error(p.line, "undefined label '" + p.target + "'");
      continue;
    }
    int64_t off = (static_cast<int64_t>(it->second) - static_cast<int64_t>(i)) * 4;
    int64_t lim = p.is_jal ? 1 << 20 : 1 << 12;
    if (off < -lim || off >= lim) {
      as.error(p.line, "branch target out of range");
      continue;
    }
    p.instr.imm = static_cast<int32_t>(off);
  }

  AsmResult res;
  res.diagnostics = std::move(as.diags);
  res.data = std::move(as.data);
  if (!res.ok()) return res;
  res.program.origin = origin;
  res.program.labels = std::move(as.labels);
  res.program.instrs.reserve(as.out.size());
  for (auto& p : as.out) res.program.instrs.push_back(p.instr);
  return res;
}

AsmResult assemble(const std::string& text, uint32_t origin) {
  SourceUnit src;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) src.lines.push_back(line);
  return assemble(src, origin);
}

namespace {

std::string xname(int r) { return "x" + std::to_string(r); }

std::string csr_name_of(uint32_t id) {
  for (const auto& [name, v] : csr_names())
    if (v == id) return name;
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", id);
  return buf;
}

}  // namespace

SourceUnit disassemble(const Program& p) {
  // synthesize labels at branch/jump targets
  std::map<uint32_t, std::string> target_labels;
  for (size_t i = 0; i < p.instrs.size(); ++i) {
    const Instruction& in = p.instrs[i];
    InstrKind k = kind_of(in.op);
    if (k == InstrKind::Branch || k == InstrKind::Jump) {
      int64_t tgt = static_cast<int64_t>(i) + in.imm / 4;
      if (tgt >= 0 && tgt <= static_cast<int64_t>(p.instrs.size()))
        target_labels.emplace(static_cast<uint32_t>(tgt),
                              "L" + std::to_string(target_labels.size()));
    }
  }

  SourceUnit src;
  src.filename = "<disassembly>";
  char buf[96];
  for (size_t i = 0; i < p.instrs.size(); ++i) {
    if (auto it = target_labels.find(static_cast<uint32_t>(i)); it != target_labels.end())
      src.lines.push_back(it->second + ":");
    const Instruction& in = p.instrs[i];
    const char* n = op_name(in.op);
    std::string line;
    switch (kind_of(in.op)) {
      case InstrKind::AluReg:
      case InstrKind::MulDiv:
        line = std::string(n) + " " + xname(in.rd) + ", " + xname(in.rs1) + ", " + xname(in.rs2);
        break;
      case InstrKind::AluImm:
        line = std::string(n) + " " + xname(in.rd) + ", " + xname(in.rs1) + ", " +
               std::to_string(in.imm);
        break;
      case InstrKind::Load:
        std::snprintf(buf, sizeof buf, "%s %s, %d(%s)", n, xname(in.rd).c_str(),
                      in.imm, xname(in.rs1).c_str());
        line = buf;
        break;
      case InstrKind::Store:
        std::snprintf(buf, sizeof buf, "%s %s, %d(%s)", n, xname(in.rs2).c_str(),
                      in.imm, xname(in.rs1).c_str());
        line = buf;
        break;
      case InstrKind::Branch: {
        uint32_t tgt = static_cast<uint32_t>(static_cast<int64_t>(i) + in.imm / 4);
        std::string t = target_labels.count(tgt) ? target_labels[tgt]
                                                 : std::to_string(in.imm);
        line = std::string(n) + " " + xname(in.rs1) + ", " + xname(in.rs2) + ", " + t;
        break;
      }
      case InstrKind::Jump: {
        uint32_t tgt = static_cast<uint32_t>(static_cast<int64_t>(i) + in.imm / 4);
        std::string t = target_labels.count(tgt) ? target_labels[tgt]
                                                 : std::to_string(in.imm);
        line = std::string(n) + " " + xname(in.rd) + ", " + t;
        break;
      }
      case InstrKind::JumpReg:
        line = std::string(n) + " " + xname(in.rd) + ", " + xname(in.rs1) + ", " +
               std::to_string(in.imm);
        break;
      case InstrKind::UpperImm:
        std::snprintf(buf, sizeof buf, "%s %s, 0x%x", n, xname(in.rd).c_str(),
                      static_cast<uint32_t>(in.imm));
        line = buf;
        break;
      case InstrKind::Csr:
        line = std::string(n) + " " + xname(in.rd) + ", " +
               csr_name_of(static_cast<uint32_t>(in.imm)) + ", " + xname(in.rs1);
        break;
      case InstrKind::Halt:
        line = n;
        break;
      case InstrKind::VectorTransfer:
        std::snprintf(buf, sizeof buf, "%s (%s), (%s), (%s)", n, xname(in.rd).c_str(),
                      xname(in.rs1).c_str(), xname(in.rs2).c_str());
        line = buf;
        break;
      case InstrKind::VectorArith: {
        if (is_two_operand_vector(in.op)) {
          std::snprintf(buf, sizeof buf, "%s (%s), (%s)", n, xname(in.rd).c_str(),
                        xname(in.rs1).c_str());
        } else {
          bool bare = in.op == Op::KSVADDRF || in.op == Op::KSVMULRF ||
                      in.op == Op::KSRLV || in.op == Op::KSRAV || in.op == Op::KSVSLT;
          std::snprintf(buf, sizeof buf, bare ? "%s (%s), (%s), %s" : "%s (%s), (%s), (%s)",
                        n, xname(in.rd).c_str(), xname(in.rs1).c_str(),
                        xname(in.rs2).c_str());
        }
        line = buf;
        break;
      }
    }
    src.lines.push_back(line);
  }
  if (auto it = target_labels.find(static_cast<uint32_t>(p.instrs.size()));
      it != target_labels.end())
    src.lines.push_back(it->second + ":");
  return src;
}

}  // namespace imtvec
