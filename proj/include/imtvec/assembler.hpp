#ifndef IMTVEC_ASSEMBLER_HPP
#define IMTVEC_ASSEMBLER_HPP

#include <string>
#include <vector>

#include "imtvec/isa.hpp"

namespace imtvec {

struct SourceUnit {
  std::vector<std::string> lines;
  std::string filename = "<memory>";
};

struct AsmDiagnostic {
  enum class Severity { Error, Warning };
  int line = 0;  // 1-based
  Severity severity = Severity::Error;
  std::string message;
};

// A .word emitted at a .org-controlled data address. Data lives in main
// memory, not program memory.
struct DataWord {
  uint32_t addr = 0;
  uint32_t value = 0;
};

struct AsmResult {
  Program program;
  std::vector<DataWord> data;
  std::vector<AsmDiagnostic> diagnostics;

  bool ok() const {
    for (const auto& d : diagnostics)
      if (d.severity == AsmDiagnostic::Severity::Error) return false;
    return true;
  }
};

// Two-pass assembly. Errors suppress the Program (ok() == false).
AsmResult assemble(const SourceUnit& src, uint32_t origin = 0);
AsmResult assemble(const std::string& text, uint32_t origin = 0);

// Emits text that reassembles to an identical Program (modulo label names).
SourceUnit disassemble(const Program& p);

// Register name helpers (x0..x31 and ABI names). Returns -1 if unknown.
int parse_register(const std::string& name);

}  // namespace imtvec

#endif  // IMTVEC_ASSEMBLER_HPP
