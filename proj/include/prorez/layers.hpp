/*
 * Copyright 2026 the prorez authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROREZ_LAYERS_HPP
#define PROREZ_LAYERS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "prorez/parallel.hpp"
#include "prorez/tensor.hpp"

namespace prorez {

/// Parameters of a conv or linear layer plus SGD momentum state.
/// conv: weights (out_ch, in_ch, 3, 3); linear: weights (out, in, 1, 1).
template <typename T>
struct LayerParams {
  Tensor4<T> weights;
  std::vector<T> bias;
  Tensor4<T> vel_w;       // velocity, same shape as weights
  std::vector<T> vel_b;

  LayerParams() = default;
  LayerParams(int out_ch, int in_ch, int kh, int kw)
      : weights(out_ch, in_ch, kh, kw),
        bias(out_ch, T(0)),
        vel_w(out_ch, in_ch, kh, kw),
        vel_b(out_ch, T(0)) {}

  int out_channels() const { return weights.n; }
  int in_channels() const { return weights.c; }
};

template <typename T>
struct LayerGrads {
  Tensor4<T> grad_in;
  Tensor4<T> grad_w;       // empty for relu / maxpool
  std::vector<T> grad_b;
};

enum class LayerKind { Conv, Relu, MaxPool, Linear };

std::string layer_kind_name(LayerKind k);

namespace detail {

// Valid index window for a 3x3 same-padding tap: out index r contributes with
// input index r + k - 1, so r ranges over [max(0, 1-k), min(dim-1, dim-k)].
inline void tap_range(int k, int dim, int& lo, int& hi) {
  lo = std::max(0, 1 - k);
  hi = std::min(dim - 1, dim - k);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// OpenMP kernels. Each output element is owned by exactly one worker and its
// accumulation order is fixed, so results are bit-identical to the serial
// reference (kernels_ref.hpp) for every thread count.
// ---------------------------------------------------------------------------

/// 3x3 same-padding convolution, pad 1, stride 1.
template <typename T>
Tensor4<T> conv2d_forward(const Tensor4<T>& in, const LayerParams<T>& p,
                          int pad = 1, int stride = 1) {
  if (pad != 1 || stride != 1)
    throw ValidationError("conv2d supports pad=1 stride=1 only");
  if (p.weights.h != 3 || p.weights.w != 3)
    throw ValidationError("conv2d kernels are 3x3");
  if (in.c != p.in_channels())
    throw ValidationError("conv2d channel mismatch: input " + shape_str(in) +
                          " vs weights " + shape_str(p.weights));
  const int n = in.n, ic_n = in.c, h = in.h, w = in.w, oc_n = p.out_channels();
  Tensor4<T> out(n, oc_n, h, w);
  parallel_for(0, n * oc_n, [&](int job) {
    const int in_idx = job / oc_n;
    const int oc = job % oc_n;
    T* op = out.plane(in_idx, oc);
    const T bv = p.bias[oc];
    for (int i = 0; i < h * w; ++i) op[i] = bv;
    for (int ic = 0; ic < ic_n; ++ic) {
      const T* xp = in.plane(in_idx, ic);
      for (int ky = 0; ky < 3; ++ky) {
        int ylo, yhi;
        detail::tap_range(ky, h, ylo, yhi);
        for (int kx = 0; kx < 3; ++kx) {
          int xlo, xhi;
          detail::tap_range(kx, w, xlo, xhi);
          const T wv = p.weights.at(oc, ic, ky, kx);
          for (int y = ylo; y <= yhi; ++y) {
            T* orow = op + static_cast<std::size_t>(y) * w;
            const T* xrow =
                xp + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
            for (int x = xlo; x <= xhi; ++x) orow[x] += wv * xrow[x];
          }
        }
      }
    }
  });
  return out;
}

template <typename T>
LayerGrads<T> conv2d_backward(const Tensor4<T>& in, const LayerParams<T>& p,
                              const Tensor4<T>& gout) {
  if (in.c != p.in_channels())
    throw ValidationError("conv2d channel mismatch: input " + shape_str(in) +
                          " vs weights " + shape_str(p.weights));
  if (gout.n != in.n || gout.c != p.out_channels() || gout.h != in.h ||
      gout.w != in.w)
    throw ValidationError("conv2d grad_out shape " + shape_str(gout) +
                          " does not match forward output");
  const int n = in.n, ic_n = in.c, h = in.h, w = in.w, oc_n = p.out_channels();
  LayerGrads<T> g;
  g.grad_in = Tensor4<T>(n, ic_n, h, w);
  g.grad_w = Tensor4<T>(oc_n, ic_n, 3, 3);
  g.grad_b.assign(oc_n, T(0));

  // grad wrt input: each (n, ic) plane owned by one worker.
  parallel_for(0, n * ic_n, [&](int job) {
    const int in_idx = job / ic_n;
    const int ic = job % ic_n;
    T* gp = g.grad_in.plane(in_idx, ic);
    for (int oc = 0; oc < oc_n; ++oc) {
      const T* op = gout.plane(in_idx, oc);
      for (int ky = 0; ky < 3; ++ky) {
        int ylo, yhi;
        detail::tap_range(ky, h, ylo, yhi);
        for (int kx = 0; kx < 3; ++kx) {
          int xlo, xhi;
          detail::tap_range(kx, w, xlo, xhi);
          const T wv = p.weights.at(oc, ic, ky, kx);
          for (int y = ylo; y <= yhi; ++y) {
            T* grow = gp + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
            const T* orow = op + static_cast<std::size_t>(y) * w;
            for (int x = xlo; x <= xhi; ++x) grow[x] += wv * orow[x];
          }
        }
      }
    }
  });

  // grad wrt weights and bias: each oc slice owned by one worker; inner
  // summation order (n, y, x) is fixed.
  parallel_for(0, oc_n, [&](int oc) {
    for (int ic = 0; ic < ic_n; ++ic) {
      for (int ky = 0; ky < 3; ++ky) {
        int ylo, yhi;
        detail::tap_range(ky, h, ylo, yhi);
        for (int kx = 0; kx < 3; ++kx) {
          int xlo, xhi;
          detail::tap_range(kx, w, xlo, xhi);
          T acc = T(0);
          for (int in_idx = 0; in_idx < n; ++in_idx) {
            const T* op = gout.plane(in_idx, oc);
            const T* xp = in.plane(in_idx, ic);
            for (int y = ylo; y <= yhi; ++y) {
              const T* orow = op + static_cast<std::size_t>(y) * w;
              const T* xrow =
                  xp + static_cast<std::size_t>(y + ky - 1) * w + (kx - 1);
              T racc = T(0);
              for (int x = xlo; x <= xhi; ++x) racc += orow[x] * xrow[x];
              acc += racc;
            }
          }
          g.grad_w.at(oc, ic, ky, kx) = acc;
        }
      }
    }
    T bacc = T(0);
    for (int in_idx = 0; in_idx < n; ++in_idx) {
      const T* op = gout.plane(in_idx, oc);
      for (int i = 0; i < h * w; ++i) bacc += op[i];
    }
    g.grad_b[oc] = bacc;
  });
  return g;
}

template <typename T>
Tensor4<T> relu_forward(const Tensor4<T>& in) {
  Tensor4<T> out(in.n, in.c, in.h, in.w);
  parallel_for(0, in.n * in.c, [&](int pl) {
    const std::size_t hw = static_cast<std::size_t>(in.h) * in.w;
    const T* xp = in.v.data() + pl * hw;
    T* op = out.v.data() + pl * hw;
    for (std::size_t i = 0; i < hw; ++i) op[i] = xp[i] > T(0) ? xp[i] : T(0);
  });
  return out;
}

template <typename T>
Tensor4<T> relu_backward(const Tensor4<T>& in, const Tensor4<T>& gout) {
  if (!in.same_shape(gout))
    throw ValidationError("relu grad_out shape " + shape_str(gout) +
                          " does not match input " + shape_str(in));
  Tensor4<T> gin(in.n, in.c, in.h, in.w);
  parallel_for(0, in.n * in.c, [&](int pl) {
    const std::size_t hw = static_cast<std::size_t>(in.h) * in.w;
    const T* xp = in.v.data() + pl * hw;
    const T* gp = gout.v.data() + pl * hw;
    T* op = gin.v.data() + pl * hw;
    for (std::size_t i = 0; i < hw; ++i) op[i] = xp[i] > T(0) ? gp[i] : T(0);
  });
  return gin;
}

/// 2x2 max pooling, stride 2. Spatial dims must be even.
template <typename T>
Tensor4<T> maxpool2_forward(const Tensor4<T>& in) {
  if (in.h % 2 != 0 || in.w % 2 != 0)
    throw ValidationError("maxpool2 needs even spatial dims, got " +
                          shape_str(in));
  const int oh = in.h / 2, ow = in.w / 2;
  Tensor4<T> out(in.n, in.c, oh, ow);
  parallel_for(0, in.n * in.c, [&](int pl) {
    const int n_ = pl / in.c, c_ = pl % in.c;
    const T* xp = in.plane(n_, c_);
    T* op = out.plane(n_, c_);
    for (int y = 0; y < oh; ++y)
      for (int x = 0; x < ow; ++x) {
        const T* r0 = xp + static_cast<std::size_t>(2 * y) * in.w + 2 * x;
        const T* r1 = r0 + in.w;
        T m = r0[0];
        if (r0[1] > m) m = r0[1];
        if (r1[0] > m) m = r1[0];
        if (r1[1] > m) m = r1[1];
        op[y * ow + x] = m;
      }
  });
  return out;
}

/// Ties route the full gradient to the first maximal position in scan order
/// (row-major within the 2x2 window).
template <typename T>
Tensor4<T> maxpool2_backward(const Tensor4<T>& in, const Tensor4<T>& gout) {
  if (in.h % 2 != 0 || in.w % 2 != 0)
    throw ValidationError("maxpool2 needs even spatial dims, got " +
                          shape_str(in));
  const int oh = in.h / 2, ow = in.w / 2;
  if (gout.n != in.n || gout.c != in.c || gout.h != oh || gout.w != ow)
    throw ValidationError("maxpool2 grad_out shape " + shape_str(gout) +
                          " does not match pooled output");
  Tensor4<T> gin(in.n, in.c, in.h, in.w);
  parallel_for(0, in.n * in.c, [&](int pl) {
    const int n_ = pl / in.c, c_ = pl % in.c;
    const T* xp = in.plane(n_, c_);
    const T* gp = gout.plane(n_, c_);
    T* op = gin.plane(n_, c_);
    for (int y = 0; y < oh; ++y)
      for (int x = 0; x < ow; ++x) {
        const std::size_t base = static_cast<std::size_t>(2 * y) * in.w + 2 * x;
        const T cand[4] = {xp[base], xp[base + 1], xp[base + in.w],
                           xp[base + in.w + 1]};
        int arg = 0;
        for (int i = 1; i < 4; ++i)
          if (cand[i] > cand[arg]) arg = i;
        const std::size_t off[4] = {base, base + 1, base + in.w,
                                    base + in.w + 1};
        op[off[arg]] += gp[y * ow + x];
      }
  });
  return gin;
}

/// Fully connected layer over the flattened input (c*h*w features).
template <typename T>
Tensor4<T> linear_forward(const Tensor4<T>& in, const LayerParams<T>& p) {
  const int k = in.c * in.h * in.w;
  if (p.weights.c * p.weights.h * p.weights.w != k)
    throw ValidationError("linear feature mismatch: input " + shape_str(in) +
                          " flattens to " + std::to_string(k) +
                          " but weights are " + shape_str(p.weights));
  const int n = in.n, out_n = p.out_channels();
  Tensor4<T> out(n, out_n, 1, 1);
  parallel_for(0, n, [&](int in_idx) {
    const T* xp = in.v.data() + static_cast<std::size_t>(in_idx) * k;
    for (int o = 0; o < out_n; ++o) {
      const T* wp = p.weights.v.data() + static_cast<std::size_t>(o) * k;
      T acc = p.bias[o];
      for (int i = 0; i < k; ++i) acc += wp[i] * xp[i];
      out.at(in_idx, o, 0, 0) = acc;
    }
  });
  return out;
}

template <typename T>
LayerGrads<T> linear_backward(const Tensor4<T>& in, const LayerParams<T>& p,
                              const Tensor4<T>& gout) {
  const int k = in.c * in.h * in.w;
  if (p.weights.c * p.weights.h * p.weights.w != k)
    throw ValidationError("linear feature mismatch: input " + shape_str(in) +
                          " flattens to " + std::to_string(k) +
                          " but weights are " + shape_str(p.weights));
  const int n = in.n, out_n = p.out_channels();
  if (gout.n != n || gout.c != out_n || gout.h != 1 || gout.w != 1)
    throw ValidationError("linear grad_out shape " + shape_str(gout) +
                          " does not match forward output");
  LayerGrads<T> g;
  g.grad_in = Tensor4<T>(in.n, in.c, in.h, in.w);
  g.grad_w = Tensor4<T>(p.weights.n, p.weights.c, p.weights.h, p.weights.w);
  g.grad_b.assign(out_n, T(0));
  parallel_for(0, n, [&](int in_idx) {
    T* gp = g.grad_in.v.data() + static_cast<std::size_t>(in_idx) * k;
    for (int o = 0; o < out_n; ++o) {
      const T gv = gout.at(in_idx, o, 0, 0);
      const T* wp = p.weights.v.data() + static_cast<std::size_t>(o) * k;
      for (int i = 0; i < k; ++i) gp[i] += wp[i] * gv;
    }
  });
  parallel_for(0, out_n, [&](int o) {
    T* wp = g.grad_w.v.data() + static_cast<std::size_t>(o) * k;
    T bacc = T(0);
    for (int in_idx = 0; in_idx < n; ++in_idx) {
      const T gv = gout.at(in_idx, o, 0, 0);
      const T* xp = in.v.data() + static_cast<std::size_t>(in_idx) * k;
      for (int i = 0; i < k; ++i) wp[i] += gv * xp[i];
      bacc += gv;
    }
    g.grad_b[o] = bacc;
  });
  return g;
}

/// Single-entry backward dispatch. Parametric layers require params.
template <typename T>
LayerGrads<T> layer_backward(LayerKind kind, const Tensor4<T>& cached_input,
                             const Tensor4<T>& grad_out,
                             const LayerParams<T>* params = nullptr) {
  switch (kind) {
    case LayerKind::Conv:
      if (!params) throw UsageError("conv backward requires layer params");
      return conv2d_backward(cached_input, *params, grad_out);
    case LayerKind::Linear:
      if (!params) throw UsageError("linear backward requires layer params");
      return linear_backward(cached_input, *params, grad_out);
    case LayerKind::Relu: {
      LayerGrads<T> g;
      g.grad_in = relu_backward(cached_input, grad_out);
      return g;
    }
    case LayerKind::MaxPool: {
      LayerGrads<T> g;
      g.grad_in = maxpool2_backward(cached_input, grad_out);
      return g;
    }
  }
  throw UsageError("unknown layer kind");
}

}  // namespace prorez

#endif  // PROREZ_LAYERS_HPP
