#include "imtvec/kernels.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace imtvec {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kQ30 = 1073741824.0;  // 2^30

uint32_t log2u(uint32_t v) {
  uint32_t s = 0;
  while ((1u << s) < v) ++s;
  return s;
}

bool is_pow2(uint32_t v) { return v && (v & (v - 1)) == 0; }

class AsmWriter {
 public:
  void op(const char* fmt, ...) {
    char buf[160];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    text_ += "  ";
    text_ += buf;
    text_ += '\n';
  }
  void label(const std::string& name) { text_ += name + ":\n"; }
  void comment(const char* c) { text_ += std::string("  # ") + c + "\n"; }
  std::string take() { return std::move(text_); }

 private:
  std::string text_;
};

}  // namespace

const char* kernel_name(KernelKind k) {
  switch (k) {
    case KernelKind::Conv: return "conv";
    case KernelKind::Fft: return "fft";
    case KernelKind::Matmul: return "matmul";
  }
  return "?";
}

MatrixSpec oracle_conv2d(const MatrixSpec& input, const MatrixSpec& filter,
                         uint32_t pscale) {
  if (filter.rows != filter.cols || filter.rows % 2 == 0 || filter.rows < 3 ||
      filter.rows > 11)
    throw BuildError("filter side must be odd, 3..11");
  const int K = static_cast<int>(filter.rows);
  const int hk = K / 2;
  const int R = static_cast<int>(input.rows);
  const int C = static_cast<int>(input.cols);
  MatrixSpec out{input.rows, input.cols, std::vector<int32_t>(input.data.size())};
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      int64_t acc = 0;
      for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
          int rr = r + i - hk, cc = c + j - hk;
          if (rr < 0 || rr >= R || cc < 0 || cc >= C) continue;  // zero padding
          acc += static_cast<int64_t>(input.at(rr, cc)) * filter.at(i, j);
        }
      }
      out.at(r, c) = static_cast<int32_t>(static_cast<uint32_t>(acc >> pscale));
    }
  }
  return out;
}

MatrixSpec oracle_matmul(const MatrixSpec& a, const MatrixSpec& b) {
  MatrixSpec out{a.rows, b.cols, std::vector<int32_t>(a.rows * b.cols)};
  for (uint32_t i = 0; i < a.rows; ++i) {
    for (uint32_t j = 0; j < b.cols; ++j) {
      uint64_t acc = 0;
      for (uint32_t k = 0; k < a.cols; ++k)
        acc += static_cast<uint64_t>(static_cast<int64_t>(a.at(i, k)) *
                                     static_cast<int64_t>(b.at(k, j)));
      out.at(i, j) = static_cast<int32_t>(static_cast<uint32_t>(acc));
    }
  }
  return out;
}

std::array<int32_t, 2> fft_twiddle(uint32_t k) {
  double th = 2.0 * kPi * static_cast<double>(k) / 256.0;
  return {static_cast<int32_t>(std::llround(std::cos(th) * kQ30)),
          static_cast<int32_t>(-std::llround(std::sin(th) * kQ30))};
}

uint32_t bit_reverse8(uint32_t i) {
  uint32_t r = 0;
  for (int b = 0; b < 8; ++b)
    if (i & (1u << b)) r |= 1u << (7 - b);
  return r;
}

std::vector<Complex32> oracle_fft256(const std::vector<Complex32>& x) {
  if (x.size() != 256) throw BuildError("fft256 needs exactly 256 samples");
  std::vector<Complex32> y(256);
  for (uint32_t i = 0; i < 256; ++i) y[bit_reverse8(i)] = x[i];

  for (int s = 0; s < 8; ++s) {
    uint32_t half = 1u << s;
    for (uint32_t g = 0; g < 256; g += 2 * half) {
      for (uint32_t k = 0; k < half; ++k) {
        auto [c, wim] = fft_twiddle(k << (7 - s));
        const Complex32 top = y[g + k];
        const Complex32 bot = y[g + half + k];
        // two 2-element dot products in 64-bit, post-scaled by 30
        int64_t tre = (static_cast<int64_t>(c) * bot.re +
                       static_cast<int64_t>(-wim) * bot.im) >> 30;
        int64_t tim = (static_cast<int64_t>(wim) * bot.re +
                       static_cast<int64_t>(c) * bot.im) >> 30;
        uint32_t tr = static_cast<uint32_t>(tre), ti = static_cast<uint32_t>(tim);
        y[g + half + k] = {static_cast<int32_t>(static_cast<uint32_t>(top.re) - tr),
                           static_cast<int32_t>(static_cast<uint32_t>(top.im) - ti)};
        y[g + k] = {static_cast<int32_t>(static_cast<uint32_t>(top.re) + tr),
                    static_cast<int32_t>(static_cast<uint32_t>(top.im) + ti)};
      }
    }
    for (auto& v : y) {
      v.re >>= 1;
      v.im >>= 1;
    }
  }
  return y;
}

MatrixSpec generate_matrix(uint64_t seed, uint32_t rows, uint32_t cols) {
  TestDataGen gen(seed);
  MatrixSpec m{rows, cols, std::vector<int32_t>(rows * cols)};
  for (auto& v : m.data) v = gen.next();
  return m;
}

std::vector<Complex32> generate_samples(uint64_t seed, uint32_t n) {
  TestDataGen gen(seed);
  std::vector<Complex32> out(n);
  for (auto& v : out) {
    v.re = gen.next();
    v.im = gen.next();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernel program builders. All three bodies are scheme-independent: each hart
// keys its scratchpad arena (scratchpad index == hartid) and its main-memory
// blocks off the hartid CSR, and kernel constants live in the last scratchpad
// of the SPMI, which is identical from every hart's point of view.
// ---------------------------------------------------------------------------

namespace {

struct CommonLayout {
  uint32_t arena_base;   // hart 0 arena; hart h adds h*cap
  uint32_t statics_spm;  // base address of the statics scratchpad
  uint32_t cap_shift;
};

CommonLayout common_layout(const CoprocConfig& cfg, uint32_t min_n) {
  if (cfg.spm_count < min_n)
    throw BuildError(std::string("kernel needs N >= ") + std::to_string(min_n));
  if (!is_pow2(cfg.spm_capacity))
    throw BuildError("kernel builder requires power-of-two spm_capacity");
  return {cfg.spm_base, cfg.spm_base + (cfg.spm_count - 1) * cfg.spm_capacity,
          log2u(cfg.spm_capacity)};
}

KernelBuild build_conv(const KernelParams& p, const CoprocConfig& cfg,
                       uint32_t instances, uint32_t done_base,
                       const std::string& prefix, MemPlanner& mem) {
  const uint32_t R = p.matrix, C = p.matrix, K = p.filter;
  if (K % 2 == 0 || K < 3 || K > 11) throw BuildError("conv filter side must be odd, 3..11");
  if (!is_pow2(R) || R < 4 || R > 32) throw BuildError("conv matrix side must be 4..32, power of two");
  CommonLayout lay = common_layout(cfg, 4);

  const uint32_t rowbytes = (C + K - 1) * 4;
  const uint32_t padded_bytes = R * rowbytes;
  const uint32_t acc_off = padded_bytes;
  const uint32_t tmp_off = acc_off + C * 4;
  const uint32_t arena_used = tmp_off + C * 4;
  if (arena_used > cfg.spm_capacity)
    throw BuildError("conv padded input buffer (" + std::to_string(arena_used) +
                     " B) exceeds scratchpad capacity " + std::to_string(cfg.spm_capacity));
  if (rowbytes > 1024 || rowbytes > cfg.spm_capacity)
    throw BuildError("conv zero row exceeds statics region");

  KernelBuild kb;
  kb.kind = KernelKind::Conv;
  kb.params = p;
  kb.entry = prefix + "entry";
  kb.input_bytes = R * C * 4;
  kb.input_stride = kb.input_bytes;
  kb.output_bytes = kb.input_bytes;
  kb.output_stride = kb.output_bytes;
  kb.input_base = mem.alloc(3 * kb.input_stride, kb.input_stride);
  kb.output_base = mem.alloc(3 * kb.output_stride, kb.output_stride);
  const uint32_t filter_base = mem.alloc(K * K * 4);
  const uint32_t table_base = mem.alloc(3 * 256, 256);
  kb.ops_per_instance = 2ull * K * K * R * C;
  kb.spm_footprint = {{lay.arena_base, arena_used, true},
                      {lay.statics_spm, rowbytes, false}};

  // filter words are preloaded by the harness (input data); only the row
  // pointer tables are static
  kb.aux_base = filter_base;
  for (int h = 0; h < 3; ++h) {
    uint32_t arena = lay.arena_base + h * cfg.spm_capacity;
    for (uint32_t idx = 0; idx <= R + K - 2; ++idx) {
      int32_t v = static_cast<int32_t>(idx) - static_cast<int32_t>(K / 2);
      uint32_t ptr = (v >= 0 && v < static_cast<int32_t>(R))
                         ? arena + static_cast<uint32_t>(v) * rowbytes
                         : lay.statics_spm;  // zero row: never written
      kb.statics.push_back({table_base + h * 256 + idx * 4, ptr});
    }
  }

  AsmWriter w;
  const std::string P = prefix;
  w.label(kb.entry);
  w.op("csrrs t0, hartid, x0");
  w.op("li t1, 32");
  w.op("csrrw x0, ewidth, t1");
  w.op("li t1, %u", C * 4);
  w.op("csrrw x0, vlen, t1");
  w.op("li s0, %u", lay.arena_base);
  w.op("slli t1, t0, %u", lay.cap_shift);
  w.op("add s0, s0, t1");
  w.op("li s1, %u", lay.statics_spm);
  w.op("li a2, %u", acc_off);
  w.op("add a2, s0, a2");
  w.op("li a3, %u", tmp_off);
  w.op("add a3, s0, a3");
  w.op("li s2, %u", kb.input_base);
  w.op("slli t1, t0, %u", log2u(kb.input_stride));
  w.op("add s2, s2, t1");
  w.op("li s3, %u", kb.output_base);
  w.op("slli t1, t0, %u", log2u(kb.output_stride));
  w.op("add s3, s3, t1");
  w.op("li s4, %u", table_base);
  w.op("slli t1, t0, 8");
  w.op("add s4, s4, t1");
  w.op("li s5, %u", filter_base);
  w.op("li s6, %u", instances);
  w.op("li s7, %u", done_base);
  w.op("slli t1, t0, 2");
  w.op("add s7, s7, t1");
  w.op("li s8, %u", p.pscale);
  w.op("li s9, %u", K);
  w.op("li s10, %u", R);
  w.op("li s11, 0");
  w.label(P + "instance");
  w.comment("stage input rows into the padded buffer");
  w.op("li t2, 0");
  w.op("mv t3, s2");
  w.op("addi t4, s0, %u", (K / 2) * 4);
  w.op("li t5, %u", C * 4);
  w.label(P + "stage");
  w.op("kmemld (t4), (t3), t5");
  w.op("addi t3, t3, %u", C * 4);
  w.op("addi t4, t4, %u", rowbytes);
  w.op("addi t2, t2, 1");
  w.op("blt t2, s10, %sstage", P.c_str());
  w.op("li a0, 0");
  w.op("mv a1, s4");
  w.op("mv a7, s3");
  w.label(P + "row");
  w.op("kvcp (a2), (s1)");
  w.op("mv a4, a1");
  w.op("li a5, 0");
  w.op("mv a6, s5");
  w.label(P + "frow");
  w.op("lw t3, 0(a4)");
  for (uint32_t j = 0; j < K; ++j) {
    w.op("lw t1, %u(a6)", j * 4);
    w.op("addi t6, t3, %u", j * 4);
    w.op("ksvmulrf (a3), (t6), t1");
    w.op("kaddv (a2), (a2), (a3)");
  }
  w.op("addi a6, a6, %u", K * 4);
  w.op("addi a4, a4, 4");
  w.op("addi a5, a5, 1");
  w.op("blt a5, s9, %sfrow", P.c_str());
  w.op("ksrav (a2), (a2), s8");
  w.op("kmemstr (a7), (a2), t5");
  w.op("addi a7, a7, %u", C * 4);
  w.op("addi a1, a1, 4");
  w.op("addi a0, a0, 1");
  w.op("blt a0, s10, %srow", P.c_str());
  w.op("addi s11, s11, 1");
  w.op("sw s11, 0(s7)");
  w.op("blt s11, s6, %sinstance", P.c_str());
  w.op("ebreak");
  kb.asm_text = w.take();
  return kb;
}

constexpr uint32_t kMatmulBlock = 8;  // output columns per staged B block

KernelBuild build_matmul(const KernelParams& p, const CoprocConfig& cfg,
                         uint32_t instances, uint32_t done_base,
                         const std::string& prefix, MemPlanner& mem) {
  (void)p;
  CommonLayout lay = common_layout(cfg, 3);
  const uint32_t jblk = kMatmulBlock;       // vlen = 32 bytes
  const uint32_t bblk_bytes = 64 * jblk * 4;  // staged B column block
  const uint32_t acc_off = bblk_bytes;
  const uint32_t tmp_off = acc_off + jblk * 4;
  const uint32_t zero_off = tmp_off + jblk * 4;
  const uint32_t arena_used = zero_off + jblk * 4;
  if (arena_used > cfg.spm_capacity)
    throw BuildError("matmul B block (" + std::to_string(arena_used) +
                     " B) exceeds scratchpad capacity");

  KernelBuild kb;
  kb.kind = KernelKind::Matmul;
  kb.params = p;
  kb.entry = prefix + "entry";
  kb.input_bytes = 2 * 64 * 64 * 4;  // A then B, contiguous per hart
  kb.input_stride = 32768;
  kb.output_bytes = 64 * 64 * 4;
  kb.output_stride = 16384;
  kb.input_base = mem.alloc(3 * kb.input_stride, kb.input_stride);
  kb.output_base = mem.alloc(3 * kb.output_stride, kb.output_stride);
  kb.ops_per_instance = 2ull * 64 * 64 * 64;
  kb.spm_footprint = {{lay.arena_base, arena_used, true}};

  AsmWriter w;
  const std::string P = prefix;
  w.label(kb.entry);
  w.op("csrrs t0, hartid, x0");
  w.op("li t1, 32");
  w.op("csrrw x0, ewidth, t1");
  w.op("li t1, %u", jblk * 4);
  w.op("csrrw x0, vlen, t1");
  w.op("li s0, %u", lay.arena_base);
  w.op("slli t1, t0, %u", lay.cap_shift);
  w.op("add s0, s0, t1");
  w.op("mv s1, s0");
  w.op("li a4, %u", acc_off);
  w.op("add a4, s0, a4");
  w.op("li a5, %u", tmp_off);
  w.op("add a5, s0, a5");
  w.op("li a6, %u", zero_off);
  w.op("add a6, s0, a6");
  w.op("li s2, %u", kb.input_base);  // A
  w.op("slli t1, t0, %u", log2u(kb.input_stride));
  w.op("add s2, s2, t1");
  w.op("li s3, %u", kb.input_base + 16384);  // B
  w.op("add s3, s3, t1");
  w.op("li s4, %u", kb.output_base);  // C
  w.op("slli t1, t0, %u", log2u(kb.output_stride));
  w.op("add s4, s4, t1");
  w.op("li s5, 64");
  w.op("li s6, %u", instances);
  w.op("li s7, %u", done_base);
  w.op("slli t1, t0, 2");
  w.op("add s7, s7, t1");
  w.op("li s8, %u", 64 / jblk);
  w.op("li s11, 0");
  w.label(P + "instance");
  w.op("li a0, 0");
  w.label(P + "jb");
  w.comment("stage one column block of B");
  w.op("mv t2, s1");
  w.op("slli t3, a0, %u", log2u(jblk * 4));
  w.op("add t3, s3, t3");
  w.op("li t4, 64");
  w.op("li t5, %u", jblk * 4);
  w.label(P + "stageb");
  w.op("kmemld (t2), (t3), t5");
  w.op("addi t2, t2, %u", jblk * 4);
  w.op("addi t3, t3, 256");
  w.op("addi t4, t4, -1");
  w.op("bne t4, x0, %sstageb", P.c_str());
  w.op("li a1, 0");
  w.op("mv a2, s2");
  w.op("slli t3, a0, %u", log2u(jblk * 4));
  w.op("add a3, s4, t3");
  w.label(P + "irow");
  w.op("kvcp (a4), (a6)");
  w.op("mv t2, s1");
  w.op("li t4, 64");
  w.label(P + "kacc");
  w.op("lw t3, 0(a2)");
  w.op("addi a2, a2, 4");
  w.op("ksvmulrf (a5), (t2), t3");
  w.op("addi t2, t2, %u", jblk * 4);
  w.op("kaddv (a4), (a4), (a5)");
  w.op("addi t4, t4, -1");
  w.op("bne t4, x0, %skacc", P.c_str());
  w.op("kmemstr (a3), (a4), t5");
  w.op("addi a3, a3, 256");
  w.op("addi a1, a1, 1");
  w.op("blt a1, s5, %sirow", P.c_str());
  w.op("addi a0, a0, 1");
  w.op("blt a0, s8, %sjb", P.c_str());
  w.op("addi s11, s11, 1");
  w.op("sw s11, 0(s7)");
  w.op("blt s11, s6, %sinstance", P.c_str());
  w.op("ebreak");
  kb.asm_text = w.take();
  return kb;
}

KernelBuild build_fft(const KernelParams& p, const CoprocConfig& cfg,
                      uint32_t instances, uint32_t done_base,
                      const std::string& prefix, MemPlanner& mem) {
  CommonLayout lay = common_layout(cfg, 4);
  const uint32_t in_off = 0;
  const uint32_t arena_used = 4096;  // input staging + work buffer
  const uint32_t twa_off = 1024, twb_off = 4096;  // in the statics scratchpad
  if (arena_used > cfg.spm_capacity || twb_off + 2040 > cfg.spm_capacity)
    throw BuildError("fft buffers exceed scratchpad capacity");

  KernelBuild kb;
  kb.kind = KernelKind::Fft;
  kb.params = p;
  kb.entry = prefix + "entry";
  kb.input_bytes = 2048;
  kb.input_stride = 2048;
  kb.output_bytes = 2048;
  kb.output_stride = 2048;
  kb.input_base = mem.alloc(3 * 2048, 2048);
  kb.output_base = mem.alloc(3 * 2048, 2048);
  const uint32_t brev_base = mem.alloc(256 * 4);
  const uint32_t twsrc_a = mem.alloc(255 * 8);
  const uint32_t twsrc_b = mem.alloc(255 * 8);
  kb.ops_per_instance = 10240;  // 1024 butterflies x (4 mul + 6 add)
  kb.spm_footprint = {{lay.arena_base + in_off, arena_used, true},
                      {lay.statics_spm + twa_off, 2040, false},
                      {lay.statics_spm + twb_off, 2040, false}};

  for (uint32_t i = 0; i < 256; ++i)
    kb.statics.push_back({brev_base + 4 * i, bit_reverse8(i) * 8});
  uint32_t slot = 0;
  for (int s = 0; s < 8; ++s) {
    for (uint32_t k = 0; k < (1u << s); ++k, ++slot) {
      auto [c, wim] = fft_twiddle(k << (7 - s));
      kb.statics.push_back({twsrc_a + 8 * slot, static_cast<uint32_t>(c)});
      kb.statics.push_back({twsrc_a + 8 * slot + 4, static_cast<uint32_t>(-wim)});
      kb.statics.push_back({twsrc_b + 8 * slot, static_cast<uint32_t>(wim)});
      kb.statics.push_back({twsrc_b + 8 * slot + 4, static_cast<uint32_t>(c)});
    }
  }

  AsmWriter w;
  const std::string P = prefix;
  w.label(kb.entry);
  w.op("csrrs t0, hartid, x0");
  w.op("li t1, 32");
  w.op("csrrw x0, ewidth, t1");
  w.op("li t1, 30");
  w.op("csrrw x0, pscale, t1");
  w.op("li gp, 4");
  w.op("li tp, 8");
  w.op("li s0, %u", lay.arena_base);
  w.op("slli t1, t0, %u", lay.cap_shift);
  w.op("add s0, s0, t1");
  w.op("mv s9, s0");
  w.op("li t1, 2048");
  w.op("add s1, s0, t1");
  w.op("add s10, s1, t1");
  w.op("li s2, %u", kb.input_base);
  w.op("slli t1, t0, 11");
  w.op("add s2, s2, t1");
  w.op("li s3, %u", kb.output_base);
  w.op("slli t1, t0, 11");
  w.op("add s3, s3, t1");
  w.op("li s4, %u", lay.statics_spm + twa_off);
  w.op("li s5, %u", lay.statics_spm + twb_off);
  w.op("li s6, %u", brev_base);
  w.op("li s7, %u", done_base);
  w.op("slli t1, t0, 2");
  w.op("add s7, s7, t1");
  w.op("li s8, %u", instances);
  w.op("li s11, 0");
  w.comment("stage twiddle tables once per run");
  w.op("li t1, 2040");
  w.op("li t2, %u", twsrc_a);
  w.op("kmemld (s4), (t2), t1");
  w.op("li t2, %u", twsrc_b);
  w.op("kmemld (s5), (t2), t1");
  w.label(P + "instance");
  w.op("li t1, 2048");
  w.op("kmemld (s9), (s2), t1");
  w.op("csrrw x0, vlen, tp");
  w.comment("bit-reversal reorder into the work buffer");
  w.op("mv t4, s6");
  w.op("mv t5, s9");
  w.op("li t6, 256");
  w.label(P + "brev");
  w.op("lw t2, 0(t4)");
  w.op("add t2, t2, s1");
  w.op("kvcp (t2), (t5)");
  w.op("addi t4, t4, 4");
  w.op("addi t5, t5, 8");
  w.op("addi t6, t6, -1");
  w.op("bne t6, x0, %sbrev", P.c_str());
  w.op("li a0, 1");
  w.op("mv a1, s4");
  w.op("mv a2, s5");
  w.label(P + "stage");
  w.op("mv a3, s1");
  w.label(P + "group");
  w.op("mv t4, a3");
  w.op("slli t5, a0, 3");
  w.op("add t5, a3, t5");
  w.op("mv t2, a1");
  w.op("mv t3, a2");
  w.op("mv t6, a0");
  w.label(P + "bf");
  w.op("kdotpps (a5), (t2), (t5)");
  w.op("kdotpps (a6), (t3), (t5)");
  w.op("sub a7, x0, a5");
  w.op("sub t1, x0, a6");
  w.op("csrrw x0, vlen, gp");
  w.op("addi t0, t4, 4");
  w.op("addi a4, t5, 4");
  w.op("ksvaddrf (t5), (t4), a7");
  w.op("ksvaddrf (a4), (t0), t1");
  w.op("ksvaddrf (t4), (t4), a5");
  w.op("ksvaddrf (t0), (t0), a6");
  w.op("csrrw x0, vlen, tp");
  w.op("addi t4, t4, 8");
  w.op("addi t5, t5, 8");
  w.op("addi t2, t2, 8");
  w.op("addi t3, t3, 8");
  w.op("addi t6, t6, -1");
  w.op("bne t6, x0, %sbf", P.c_str());
  w.op("slli t1, a0, 4");
  w.op("add a3, a3, t1");
  w.op("blt a3, s10, %sgroup", P.c_str());
  w.comment("stage output scaling >> 1");
  w.op("li t1, 2048");
  w.op("csrrw x0, vlen, t1");
  w.op("li t2, 1");
  w.op("ksrav (s1), (s1), t2");
  w.op("csrrw x0, vlen, tp");
  w.op("slli t1, a0, 3");
  w.op("add a1, a1, t1");
  w.op("add a2, a2, t1");
  w.op("slli a0, a0, 1");
  w.op("li t1, 256");
  w.op("blt a0, t1, %sstage", P.c_str());
  w.op("li t1, 2048");
  w.op("kmemstr (s3), (s1), t1");
  w.op("addi s11, s11, 1");
  w.op("sw s11, 0(s7)");
  w.op("blt s11, s8, %sinstance", P.c_str());
  w.op("ebreak");
  kb.asm_text = w.take();
  return kb;
}

}  // namespace

KernelBuild build_kernel(KernelKind kind, const KernelParams& params,
                         const CoprocConfig& cfg, uint32_t instances,
                         uint32_t done_base, const std::string& prefix,
                         MemPlanner& mem) {
  if (instances == 0) throw BuildError("instances must be >= 1");
  switch (kind) {
    case KernelKind::Conv:
      return build_conv(params, cfg, instances, done_base, prefix, mem);
    case KernelKind::Matmul:
      return build_matmul(params, cfg, instances, done_base, prefix, mem);
    case KernelKind::Fft:
      return build_fft(params, cfg, instances, done_base, prefix, mem);
  }
  throw BuildError("unknown kernel kind");
}

}  // namespace imtvec
