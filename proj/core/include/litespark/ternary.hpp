#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "litespark/aligned.hpp"
#include "litespark/errors.hpp"

namespace litespark {

/// Ternary weight matrix in kernel-ready form.
///
/// Logical shape is K x N (input features x outputs). Storage is transposed:
/// each output column's weight vector is one contiguous run of `rows_padded`
/// int8 codes, zero-padded past `rows_logical` so kernels never need a tail
/// loop. Column sums are precomputed for zero-point correction and as an
/// integrity check; `tensor_scale` restores the original weight magnitude
/// after integer accumulation.
struct TernaryMatrix {
  int rows_logical = 0;  // K
  int cols = 0;          // N
  int rows_padded = 0;   // K rounded up to alignment_bytes
  int alignment_bytes = 16;
  float tensor_scale = 1.0f;
  AlignedVector<int8_t> codes;     // cols * rows_padded, output-major
  std::vector<int32_t> col_sums;   // per output column

  const int8_t* column(int j) const { return codes.data() + static_cast<size_t>(j) * rows_padded; }
  int8_t* column(int j) { return codes.data() + static_cast<size_t>(j) * rows_padded; }
  int8_t at(int k, int j) const { return codes[static_cast<size_t>(j) * rows_padded + k]; }
};

/// Batch of int8-quantized activation rows with one float scale per row.
/// Rows are padded to the paired weight matrix's `rows_padded`; the padded
/// tail is zero.
struct QuantizedRowBatch {
  int num_rows = 0;    // M
  int row_len = 0;     // K (logical)
  int row_stride = 0;  // padded row length
  AlignedVector<int8_t> codes;  // num_rows * row_stride
  std::vector<float> scales;    // per row: max|x| / 127

  const int8_t* row(int i) const { return codes.data() + static_cast<size_t>(i) * row_stride; }
  int8_t* row(int i) { return codes.data() + static_cast<size_t>(i) * row_stride; }
};

/// Exact int32 dot-product accumulators, M x N row-major.
/// Safe against overflow for K < 2^16 since |x*w| <= 127.
struct AccumulatorMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int32_t> values;

  int32_t at(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }
  int32_t* row(int i) { return values.data() + static_cast<size_t>(i) * cols; }
  const int32_t* row(int i) const { return values.data() + static_cast<size_t>(i) * cols; }
  void resize(int m, int n) {
    rows = m;
    cols = n;
    values.resize(static_cast<size_t>(m) * n);
  }
};

/// How the per-tensor scale gamma is derived during ternarization.
/// Weights are divided by gamma before rounding to {-1, 0, +1}.
enum class GammaMode {
  kMeanAbsPerTensor,  // gamma = mean(|w|), 1 if the tensor is all zero
  kFixedOne,          // gamma = 1 (checkpoints that are already ternary)
};

struct TernarizePolicy {
  GammaMode gamma_mode = GammaMode::kMeanAbsPerTensor;
};

inline bool valid_alignment(int a) { return a == 16 || a == 32 || a == 64; }

// --- Activation quantization ------------------------------------------------

/// Per-row symmetric quantization of an M x K float matrix to int8.
/// codes[i][k] = round_half_away(x[i][k] * 127 / max|x[i]|), scale = max|x[i]| / 127.
/// An all-zero row yields all-zero codes and scale 0. Rows are zero-padded to
/// `pad_to`. Throws QuantizationError on non-finite input.
void quantize_rows_into(const float* x, int m, int k, int pad_to, QuantizedRowBatch& out);
QuantizedRowBatch quantize_rows(const float* x, int m, int k, int pad_to);

/// Rescale int32 accumulators back to float: y[i][j] = acc[i][j] * row_scales[i] * tensor_scale.
/// `acc` must already be offset-corrected (signed semantics).
void dequantize_output_into(const AccumulatorMatrix& acc, const float* row_scales,
                            float tensor_scale, float* out);
std::vector<float> dequantize_output(const AccumulatorMatrix& acc,
                                     std::span<const float> row_scales, float tensor_scale);

// --- Ternarization ----------------------------------------------------------

/// Round a K x N float weight matrix (row-major) to ternary codes:
/// code = clamp(round_half_away(w / gamma), -1, +1). Stores transposed and
/// zero-padded to `alignment` bytes, with column sums precomputed.
/// Throws QuantizationError on non-finite weights, ConfigError on bad alignment.
TernaryMatrix ternarize_tensor(const float* w, int k, int n, const TernarizePolicy& policy,
                               int alignment);

/// Exact integer column sums over the logical rows of `w`.
std::vector<int32_t> column_sums(const TernaryMatrix& w);

/// Copy of `w` re-padded to a different alignment quantum. Codes and column
/// sums are unchanged; only the zero tail length moves.
TernaryMatrix repad_matrix(const TernaryMatrix& w, int alignment);

// --- Reference kernels (oracles) ---------------------------------------------

/// Bit-exact scalar ternary matmul: acc[i][j] = sum_k x[i][k] * w[k][j],
/// evaluated as add-when-+1 / subtract-when--1 / skip-when-0 in int32.
/// This is the conformance oracle every SIMD backend must match exactly.
void reference_ternary_matmul_into(const QuantizedRowBatch& x, const TernaryMatrix& w,
                                   AccumulatorMatrix& out);
AccumulatorMatrix reference_ternary_matmul(const QuantizedRowBatch& x, const TernaryMatrix& w);

/// Plain float32 matrix product Y = X W with X (M x K) and W (K x N), both
/// row-major. Accuracy oracle and the float-reference inference path.
void reference_float_linear_into(const float* x, int m, int k, const float* w, int n, float* y);
std::vector<float> reference_float_linear(const float* x, int m, int k, const float* w, int n);

}  // namespace litespark
