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

#ifndef PROREZ_KERNELS_REF_HPP
#define PROREZ_KERNELS_REF_HPP

// Serial reference kernels: plain nested loops, no tiling, no OpenMP. These
// are the ground truth the parallel kernels in layers.hpp are tested and
// benchmarked against. Per-element accumulation order matches the parallel
// kernels, so equality is exact, not approximate.

#include "prorez/layers.hpp"
#include "prorez/tensor.hpp"

namespace prorez::ref {

template <typename T>
Tensor4<T> conv2d_forward(const Tensor4<T>& in, const LayerParams<T>& p) {
  if (in.c != p.in_channels())
    throw ValidationError("conv2d channel mismatch: input " + shape_str(in) +
                          " vs weights " + shape_str(p.weights));
  const int h = in.h, w = in.w;
  Tensor4<T> out(in.n, p.out_channels(), h, w);
  for (int n = 0; n < in.n; ++n)
    for (int oc = 0; oc < p.out_channels(); ++oc)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          T acc = p.bias[oc];
          for (int ic = 0; ic < in.c; ++ic)
            for (int ky = 0; ky < 3; ++ky)
              for (int kx = 0; kx < 3; ++kx) {
                const int iy = y + ky - 1, ix = x + kx - 1;
                if (iy < 0 || iy >= h || ix < 0 || ix >= w) continue;
                acc += p.weights.at(oc, ic, ky, kx) * in.at(n, ic, iy, ix);
              }
          out.at(n, oc, y, x) = acc;
        }
  return out;
}

template <typename T>
LayerGrads<T> conv2d_backward(const Tensor4<T>& in, const LayerParams<T>& p,
                              const Tensor4<T>& gout) {
  const int h = in.h, w = in.w;
  LayerGrads<T> g;
  g.grad_in = Tensor4<T>(in.n, in.c, h, w);
  g.grad_w = Tensor4<T>(p.out_channels(), in.c, 3, 3);
  g.grad_b.assign(p.out_channels(), T(0));
  for (int n = 0; n < in.n; ++n)
    for (int ic = 0; ic < in.c; ++ic)
      for (int iy = 0; iy < h; ++iy)
        for (int ix = 0; ix < w; ++ix) {
          T acc = T(0);
          for (int oc = 0; oc < p.out_channels(); ++oc)
            for (int ky = 0; ky < 3; ++ky)
              for (int kx = 0; kx < 3; ++kx) {
                const int y = iy - ky + 1, x = ix - kx + 1;
                if (y < 0 || y >= h || x < 0 || x >= w) continue;
                acc += p.weights.at(oc, ic, ky, kx) * gout.at(n, oc, y, x);
              }
          g.grad_in.at(n, ic, iy, ix) = acc;
        }
  for (int oc = 0; oc < p.out_channels(); ++oc) {
    for (int ic = 0; ic < in.c; ++ic)
      for (int ky = 0; ky < 3; ++ky)
        for (int kx = 0; kx < 3; ++kx) {
          T acc = T(0);
          for (int n = 0; n < in.n; ++n)
            for (int y = 0; y < h; ++y) {
              T racc = T(0);
              for (int x = 0; x < w; ++x) {
                const int iy = y + ky - 1, ix = x + kx - 1;
                if (iy < 0 || iy >= h || ix < 0 || ix >= w) continue;
                racc += gout.at(n, oc, y, x) * in.at(n, ic, iy, ix);
              }
              acc += racc;
            }
          g.grad_w.at(oc, ic, ky, kx) = acc;
        }
    T bacc = T(0);
    for (int n = 0; n < in.n; ++n)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) bacc += gout.at(n, oc, y, x);
    g.grad_b[oc] = bacc;
  }
  return g;
}

template <typename T>
Tensor4<T> linear_forward(const Tensor4<T>& in, const LayerParams<T>& p) {
  const int k = in.c * in.h * in.w;
  Tensor4<T> out(in.n, p.out_channels(), 1, 1);
  for (int n = 0; n < in.n; ++n)
    for (int o = 0; o < p.out_channels(); ++o) {
      T acc = p.bias[o];
      for (int i = 0; i < k; ++i)
        acc += p.weights.v[static_cast<std::size_t>(o) * k + i] *
               in.v[static_cast<std::size_t>(n) * k + i];
      out.at(n, o, 0, 0) = acc;
    }
  return out;
}

}  // namespace prorez::ref

#endif  // PROREZ_KERNELS_REF_HPP
