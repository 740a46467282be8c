#pragma once

// Internal interface between the dispatcher and the per-ISA translation
// units. Each backend TU is compiled with its own -m flags and must only be
// entered after runtime feature detection says the CPU can execute it.

#include <cstddef>
#include <cstdint>

namespace litespark::detail {

struct GemmArgs {
  const int8_t* x = nullptr;  // m rows of row_stride codes; for offset-128
                              // backends the bytes are already biased to
                              // unsigned range (code + 128)
  size_t row_stride = 0;      // padded K, multiple of the backend alignment
  int m = 0;
  const int8_t* codes = nullptr;  // output-major weights, column j at codes + j*rows_padded
  int rows_padded = 0;
  int32_t* out = nullptr;  // m x out_stride raw accumulators
  size_t out_stride = 0;
};

// Computes raw accumulators for output columns [col_begin, col_end), all rows.
using GemmColsFn = void (*)(const GemmArgs&, int col_begin, int col_end);

GemmColsFn scalar_gemm();

#if defined(__x86_64__) || defined(_M_X64)
GemmColsFn avx512vnni_gemm();
GemmColsFn avxvnni_gemm_vex();   // VEX encoding, needs the AVX-VNNI CPUID flag
GemmColsFn avxvnni_gemm_evex();  // EVEX encoding, needs AVX512-VNNI + VL
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
GemmColsFn neon_sdot_gemm();
#endif

// CPUID / hwcap probes, cached after first call.
bool cpu_has_avx512vnni();
bool cpu_has_avxvnni_vex();
bool cpu_has_avx512vl();
bool cpu_has_neon_dotprod();

}  // namespace litespark::detail
