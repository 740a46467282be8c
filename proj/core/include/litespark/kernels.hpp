#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litespark/ternary.hpp"

namespace litespark {

/// Available kernel backends, in dispatch priority order.
enum class Backend {
  kAvx512Vnni,  // 512-bit VPDPBUSD, Intel Ice Lake+ / AMD Zen4+
  kAvxVnni,     // 256-bit VPDPBUSD, Intel Core Ultra (also usable on AVX-512 hosts)
  kNeonSdot,    // 128-bit SDOT, ARMv8.2 DotProd (Apple M1-M4 and friends)
  kScalar,      // portable reference path, always available
};

/// Static description of one backend: vector geometry, required weight
/// alignment, and the activation offset its dot-product instruction semantics
/// impose. VPDPBUSD multiplies unsigned by signed bytes, so the x86 backends
/// run with activations biased by +128 and need column-sum correction;
/// SDOT and the scalar path are signed-by-signed and need none.
struct KernelBackendId {
  Backend id = Backend::kScalar;
  int vector_bytes = 1;
  int alignment_bytes = 16;
  int activation_offset = 0;  // 0 or 128
  const char* name = "scalar";
};

/// Table entry for `backend`; does not check availability.
KernelBackendId backend_info(Backend backend);

/// True if the current CPU (and OS) can execute `backend`.
bool backend_supported(Backend backend);

/// All supported backends in priority order; portable scalar is always last.
std::vector<KernelBackendId> supported_backends();

/// Parse a backend name: one of "scalar", "neon", "avx512vnni", "avxvnni".
std::optional<Backend> backend_from_name(std::string_view name);

/// Pick a backend. Priority is avx512vnni > avxvnni > neon > scalar.
/// `override_name`, or failing that the LITESPARK_FORCE_BACKEND environment
/// variable, forces a specific backend; an unknown or unsupported name
/// raises ConfigError.
KernelBackendId detect_backend(std::optional<std::string_view> override_name = std::nullopt);

/// How a matmul call should run: which backend and how many worker threads.
/// Work is partitioned over contiguous blocks of output columns; each block
/// is at least four columns, so small matrices use fewer threads.
struct KernelPlan {
  KernelBackendId backend;
  int threads = 1;
};

/// Convenience: detected backend (honoring overrides) with `threads` workers.
KernelPlan make_plan(int threads, std::optional<std::string_view> backend_override = std::nullopt);

/// Integer matmul through the planned backend. Bit-identical to
/// reference_ternary_matmul for every input, backend and thread count; the
/// result is in signed semantics (any activation-offset bias is already
/// corrected). Requires x padded to w.rows_padded and w padded to the
/// backend's alignment (repad_matrix if it was converted for a narrower one).
void kernel_matmul_into(const KernelPlan& plan, const QuantizedRowBatch& x,
                        const TernaryMatrix& w, AccumulatorMatrix& out);
AccumulatorMatrix kernel_matmul(const KernelPlan& plan, const QuantizedRowBatch& x,
                                const TernaryMatrix& w);

/// Remove the bias a +offset activation encoding adds to raw accumulators:
/// corrected[i][j] = raw[i][j] - offset * col_sums[j]. Offset 0 is the identity.
void apply_offset_correction(AccumulatorMatrix& acc, int offset,
                             std::span<const int32_t> col_sums);

/// Full quantized linear layer: quantize rows -> integer matmul -> rescale.
/// The single entry point the model runtime uses.
void linear_forward_into(const float* x, int m, const TernaryMatrix& w, const KernelPlan& plan,
                         QuantizedRowBatch& q_scratch, AccumulatorMatrix& acc_scratch, float* out);
std::vector<float> linear_forward(const float* x, int m, int k, const TernaryMatrix& w,
                                  const KernelPlan& plan);

}  // namespace litespark
