#ifndef IMTVEC_KERNELS_HPP
#define IMTVEC_KERNELS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "imtvec/assembler.hpp"
#include "imtvec/coproc.hpp"
#include "imtvec/isa.hpp"

namespace imtvec {

struct MatrixSpec {
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<int32_t> data;  // row-major

  int32_t at(uint32_t r, uint32_t c) const { return data[r * cols + c]; }
  int32_t& at(uint32_t r, uint32_t c) { return data[r * cols + c]; }
};

struct Complex32 {
  int32_t re = 0;
  int32_t im = 0;
  bool operator==(const Complex32&) const = default;
};

// ---- scalar oracles (bit-exact references for the vector kernels) ----

// Zero-padded 2D convolution, 64-bit accumulation, arithmetic >> pscale,
// truncated to 32 bits. Filter side must be odd, 3..11.
MatrixSpec oracle_conv2d(const MatrixSpec& input, const MatrixSpec& filter,
                         uint32_t pscale);

// c[i][j] = low 32 bits of sum_k a[i][k]*b[k][j] with 64-bit accumulation.
MatrixSpec oracle_matmul(const MatrixSpec& a, const MatrixSpec& b);

// Radix-2 DIT, bit-reversed input reordering, 8 stages, Q1.30 twiddles,
// butterfly products accumulated in 64 bits then >> 30, each stage output
// >> 1 (total scaling 1/256).
std::vector<Complex32> oracle_fft256(const std::vector<Complex32>& x);

// Q1.30 twiddle for e^{-j*2*pi*k/256}: returns (re, im).
std::array<int32_t, 2> fft_twiddle(uint32_t k);
uint32_t bit_reverse8(uint32_t i);

// ---- deterministic test data ----

// 64-bit LCG (Knuth MMIX constants), values limited to |v| < 2^20 so that
// conv/matmul accumulations stay far from 64-bit overflow.
class TestDataGen {
 public:
  explicit TestDataGen(uint64_t seed) : state_(seed) {}
  int32_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<int32_t>((state_ >> 33) % 2097151ull) - 1048575;
  }

 private:
  uint64_t state_;
};

MatrixSpec generate_matrix(uint64_t seed, uint32_t rows, uint32_t cols);
std::vector<Complex32> generate_samples(uint64_t seed, uint32_t n);

// ---- kernel program builders ----

enum class KernelKind : uint8_t { Conv, Fft, Matmul };
const char* kernel_name(KernelKind k);

struct KernelParams {
  uint32_t matrix = 32;  // conv input side; matmul fixed 64x64; fft fixed 256
  uint32_t filter = 3;   // conv filter side, odd, 3..11
  uint32_t pscale = 0;   // conv post-scaling shift
};

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bump allocator for main-memory data regions.
struct MemPlanner {
  uint32_t cursor;
  uint32_t limit;
  uint32_t alloc(uint32_t bytes, uint32_t align = 256) {
    cursor = (cursor + align - 1) & ~(align - 1);
    uint32_t base = cursor;
    if (bytes > limit - cursor) throw BuildError("main memory plan overflow");
    cursor += bytes;
    return base;
  }
};

struct KernelBuild {
  KernelKind kind;
  KernelParams params;
  std::string entry;     // label; all harts enter here (hartid-keyed layout)
  std::string asm_text;
  std::vector<DataWord> statics;  // tables to preload into main memory

  uint32_t input_base = 0, input_stride = 0, input_bytes = 0;
  uint32_t output_base = 0, output_stride = 0, output_bytes = 0;
  uint32_t aux_base = 0;  // conv: filter words (filled by the harness)
  uint64_t ops_per_instance = 0;  // multiplies + additions (oracle census)

  // SPM ranges the kernel owns, for state comparison across schemes;
  // per_hart ranges are offset by hart*spm_capacity
  struct SpmRange { uint32_t addr; uint32_t len; bool per_hart; };
  std::vector<SpmRange> spm_footprint;
};

// Emits a scheme-independent assembly body. The program reads hartid to key
// its scratchpad arena and main-memory blocks, loops `instances` times, and
// stores the instance count to done_base + 4*hartid after each instance.
KernelBuild build_kernel(KernelKind kind, const KernelParams& params,
                         const CoprocConfig& cfg, uint32_t instances,
                         uint32_t done_base, const std::string& prefix,
                         MemPlanner& mem);

}  // namespace imtvec

#endif  // IMTVEC_KERNELS_HPP
