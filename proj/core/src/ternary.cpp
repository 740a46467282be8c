#include "litespark/ternary.hpp"

#include <cmath>
#include <cstring>

namespace litespark {

namespace {

// round half away from zero, the rounding mode used for both activation
// quantization and ternarization
inline int round_half_away(float v) { return static_cast<int>(std::lroundf(v)); }

void check_finite_row(const float* row, int k, const char* what) {
  float probe = 0.0f;
  for (int i = 0; i < k; ++i) probe += row[i] * 0.0f;
  // x * 0 is NaN exactly when x is NaN or +-inf
  if (probe != 0.0f) throw QuantizationError(std::string(what) + ": non-finite input");
}

}  // namespace

void quantize_rows_into(const float* x, int m, int k, int pad_to, QuantizedRowBatch& out) {
  if (m < 0 || k <= 0) throw ShapeError("quantize_rows: bad shape");
  if (pad_to < k) throw ShapeError("quantize_rows: pad_to smaller than row length");

  out.num_rows = m;
  out.row_len = k;
  out.row_stride = pad_to;
  out.codes.resize(static_cast<size_t>(m) * pad_to);
  out.scales.resize(m);

  for (int i = 0; i < m; ++i) {
    const float* src = x + static_cast<size_t>(i) * k;
    int8_t* dst = out.row(i);

    float max_abs = 0.0f;
    float probe = 0.0f;
    for (int j = 0; j < k; ++j) {
      probe += src[j] * 0.0f;
      max_abs = std::max(max_abs, std::fabs(src[j]));
    }
    if (probe != 0.0f || !std::isfinite(max_abs))
      throw QuantizationError("quantize_rows: non-finite input");

    if (max_abs == 0.0f) {
      std::memset(dst, 0, pad_to);
      out.scales[i] = 0.0f;
      continue;
    }

    const float inv_scale = 127.0f / max_abs;
    for (int j = 0; j < k; ++j) {
      int q = round_half_away(src[j] * inv_scale);
      q = std::min(127, std::max(-127, q));
      dst[j] = static_cast<int8_t>(q);
    }
    if (pad_to > k) std::memset(dst + k, 0, pad_to - k);
    out.scales[i] = max_abs / 127.0f;
  }
}

QuantizedRowBatch quantize_rows(const float* x, int m, int k, int pad_to) {
  QuantizedRowBatch out;
  quantize_rows_into(x, m, k, pad_to, out);
  return out;
}

void dequantize_output_into(const AccumulatorMatrix& acc, const float* row_scales,
                            float tensor_scale, float* out) {
  for (int i = 0; i < acc.rows; ++i) {
    const float scale = row_scales[i] * tensor_scale;
    const int32_t* src = acc.row(i);
    float* dst = out + static_cast<size_t>(i) * acc.cols;
    for (int j = 0; j < acc.cols; ++j) dst[j] = static_cast<float>(src[j]) * scale;
  }
}

std::vector<float> dequantize_output(const AccumulatorMatrix& acc,
                                     std::span<const float> row_scales, float tensor_scale) {
  if (static_cast<int>(row_scales.size()) != acc.rows)
    throw ShapeError("dequantize_output: one scale per row required");
  std::vector<float> out(static_cast<size_t>(acc.rows) * acc.cols);
  dequantize_output_into(acc, row_scales.data(), tensor_scale, out.data());
  return out;
}

TernaryMatrix ternarize_tensor(const float* w, int k, int n, const TernarizePolicy& policy,
                               int alignment) {
  if (k <= 0 || n <= 0) throw ShapeError("ternarize_tensor: bad shape");
  if (!valid_alignment(alignment))
    throw ConfigError("ternarize_tensor: alignment must be 16, 32 or 64");

  const size_t total = static_cast<size_t>(k) * n;
  check_finite_row(w, static_cast<int>(total), "ternarize_tensor");

  float gamma = 1.0f;
  if (policy.gamma_mode == GammaMode::kMeanAbsPerTensor) {
    double sum_abs = 0.0;
    for (size_t i = 0; i < total; ++i) sum_abs += std::fabs(w[i]);
    const double mean = sum_abs / static_cast<double>(total);
    gamma = mean > 0.0 ? static_cast<float>(mean) : 1.0f;
  }

  TernaryMatrix t;
  t.rows_logical = k;
  t.cols = n;
  t.rows_padded = round_up(k, alignment);
  t.alignment_bytes = alignment;
  t.tensor_scale = gamma;
  t.codes.assign(static_cast<size_t>(n) * t.rows_padded, 0);
  t.col_sums.assign(n, 0);

  for (int j = 0; j < n; ++j) {
    int8_t* col = t.column(j);
    int32_t sum = 0;
    for (int i = 0; i < k; ++i) {
      int code = round_half_away(w[static_cast<size_t>(i) * n + j] / gamma);
      code = std::min(1, std::max(-1, code));
      col[i] = static_cast<int8_t>(code);
      sum += code;
    }
    t.col_sums[j] = sum;
  }
  return t;
}

std::vector<int32_t> column_sums(const TernaryMatrix& w) {
  std::vector<int32_t> sums(w.cols, 0);
  for (int j = 0; j < w.cols; ++j) {
    const int8_t* col = w.column(j);
    int32_t s = 0;
    for (int i = 0; i < w.rows_logical; ++i) s += col[i];
    sums[j] = s;
  }
  return sums;
}

TernaryMatrix repad_matrix(const TernaryMatrix& w, int alignment) {
  if (!valid_alignment(alignment)) throw ConfigError("repad_matrix: alignment must be 16, 32 or 64");
  TernaryMatrix t;
  t.rows_logical = w.rows_logical;
  t.cols = w.cols;
  t.rows_padded = round_up(w.rows_logical, alignment);
  t.alignment_bytes = alignment;
  t.tensor_scale = w.tensor_scale;
  t.col_sums = w.col_sums;
  t.codes.assign(static_cast<size_t>(t.cols) * t.rows_padded, 0);
  for (int j = 0; j < t.cols; ++j)
    std::memcpy(t.column(j), w.column(j), w.rows_logical);
  return t;
}

void reference_ternary_matmul_into(const QuantizedRowBatch& x, const TernaryMatrix& w,
                                   AccumulatorMatrix& out) {
  if (x.row_stride != w.rows_padded)
    throw ShapeError("reference_ternary_matmul: activation padding does not match weights");
  if (x.row_len > w.rows_padded) throw ShapeError("reference_ternary_matmul: row length mismatch");

  out.resize(x.num_rows, w.cols);
  const int kp = w.rows_padded;
  for (int i = 0; i < x.num_rows; ++i) {
    const int8_t* xrow = x.row(i);
    int32_t* orow = out.row(i);
    for (int j = 0; j < w.cols; ++j) {
      const int8_t* col = w.column(j);
      int32_t acc = 0;
      for (int k = 0; k < kp; ++k) {
        const int8_t code = col[k];
        if (code == 1)
          acc += xrow[k];
        else if (code == -1)
          acc -= xrow[k];
      }
      orow[j] = acc;
    }
  }
}

AccumulatorMatrix reference_ternary_matmul(const QuantizedRowBatch& x, const TernaryMatrix& w) {
  AccumulatorMatrix out;
  reference_ternary_matmul_into(x, w, out);
  return out;
}

void reference_float_linear_into(const float* x, int m, int k, const float* w, int n, float* y) {
  for (int i = 0; i < m; ++i) {
    const float* xrow = x + static_cast<size_t>(i) * k;
    float* yrow = y + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) yrow[j] = 0.0f;
    for (int kk = 0; kk < k; ++kk) {
      const float xv = xrow[kk];
      if (xv == 0.0f) continue;
      const float* wrow = w + static_cast<size_t>(kk) * n;
      for (int j = 0; j < n; ++j) yrow[j] += xv * wrow[j];
    }
  }
}

std::vector<float> reference_float_linear(const float* x, int m, int k, const float* w, int n) {
  std::vector<float> y(static_cast<size_t>(m) * n);
  reference_float_linear_into(x, m, k, w, n, y.data());
  return y;
}

}  // namespace litespark
