#ifndef IMTVEC_MEMORY_HPP
#define IMTVEC_MEMORY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace imtvec {

// Simulator trap: raised on illegal accesses and illegal instructions,
// carrying enough context to locate the faulting hart.
struct SimTrap : std::runtime_error {
  int hart;
  uint32_t pc;
  uint32_t addr;
  SimTrap(const std::string& what, int hart_ = -1, uint32_t pc_ = 0, uint32_t addr_ = 0)
      : std::runtime_error(what), hart(hart_), pc(pc_), addr(addr_) {}
};

// Main data memory: flat little-endian byte array behind a single 32-bit
// port. Program memory is kept separately (Harvard organization).
class MainMemory {
 public:
  explicit MainMemory(uint32_t size_bytes = 1u << 20) : bytes_(size_bytes, 0) {}

  uint32_t size() const { return static_cast<uint32_t>(bytes_.size()); }

  // width in bits: 8, 16 or 32. Loads return the raw (zero-extended) value;
  // sign extension for lb/lh is applied by the scalar unit.
  uint32_t read(uint32_t addr, unsigned width) const;
  void write(uint32_t addr, unsigned width, uint32_t value);

  // Unchecked helpers for harness/test fixture setup (still range-checked).
  uint32_t read_word(uint32_t addr) const { return read(addr, 32); }
  void write_word(uint32_t addr, uint32_t value) { write(addr, 32, value); }

  const uint8_t* data() const { return bytes_.data(); }
  uint8_t* data() { return bytes_.data(); }

  // Raw binary image, placed at base.
  void load_binary(const std::string& path, uint32_t base);
  void store_binary(const std::string& path, uint32_t base, uint32_t len) const;
  // Textual hex image: one 8-digit word per line, ascending addresses.
  void load_hex(const std::string& path, uint32_t base);
  void store_hex(const std::string& path, uint32_t base, uint32_t words) const;

 private:
  void check(uint32_t addr, unsigned width) const;
  std::vector<uint8_t> bytes_;
};

// LSU transfer timing: initial access latency plus one 32-bit word per
// cycle through the single data memory port.
inline uint64_t transfer_cycles(uint64_t bytes, uint32_t initial_latency) {
  return initial_latency + (bytes + 3) / 4;
}

}  // namespace imtvec

#endif  // IMTVEC_MEMORY_HPP
