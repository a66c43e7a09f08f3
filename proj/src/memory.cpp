#include "imtvec/memory.hpp"

#include <cstdio>
#include <fstream>

namespace imtvec {

void MainMemory::check(uint32_t addr, unsigned width) const {
  unsigned nbytes = width / 8;
  if (addr > bytes_.size() || bytes_.size() - addr < nbytes)
    throw SimTrap("memory access out of range", -1, 0, addr);
  if (addr % nbytes != 0)
    throw SimTrap("misaligned memory access", -1, 0, addr);
}

uint32_t MainMemory::read(uint32_t addr, unsigned width) const {
  check(addr, width);
  uint32_t v = 0;
  for (unsigned b = 0; b < width / 8; ++b)
    v |= static_cast<uint32_t>(bytes_[addr + b]) << (8 * b);
  return v;
}

void MainMemory::write(uint32_t addr, unsigned width, uint32_t value) {
  check(addr, width);
  for (unsigned b = 0; b < width / 8; ++b)
    bytes_[addr + b] = static_cast<uint8_t>(value >> (8 * b));
}

void MainMemory::load_binary(const std::string& path, uint32_t base) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(f)),
                        std::istreambuf_iterator<char>());
  if (base + buf.size() > bytes_.size())
    throw std::runtime_error("image does not fit memory: " + path);
  for (size_t i = 0; i < buf.size(); ++i)
    bytes_[base + i] = static_cast<uint8_t>(buf[i]);
}

void MainMemory::store_binary(const std::string& path, uint32_t base, uint32_t len) const {
  if (base + len > bytes_.size()) throw std::runtime_error("range out of memory");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(reinterpret_cast<const char*>(bytes_.data()) + base, len);
}

void MainMemory::load_hex(const std::string& path, uint32_t base) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  uint32_t addr = base;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    write(addr, 32, static_cast<uint32_t>(std::stoul(line, nullptr, 16)));
    addr += 4;
  }
}

void MainMemory::store_hex(const std::string& path, uint32_t base, uint32_t words) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  char buf[16];
  for (uint32_t w = 0; w < words; ++w) {
    std::snprintf(buf, sizeof buf, "%08x\n", read(base + 4 * w, 32));
    f << buf;
  }
}

}  // namespace imtvec
