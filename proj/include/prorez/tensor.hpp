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

#ifndef PROREZ_TENSOR_HPP
#define PROREZ_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "prorez/errors.hpp"

namespace prorez {

/// Dense row-major (n, c, h, w) array; the currency of all network math.
/// double in tests and oracles, float in training loops.
template <typename T>
struct Tensor4 {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<T> v;

  Tensor4() = default;
  Tensor4(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_),
        v(static_cast<std::size_t>(n_) * c_ * h_ * w_, T(0)) {
    if (n_ < 0 || c_ < 0 || h_ < 0 || w_ < 0)
      throw ValidationError("tensor dims must be non-negative");
  }

  std::size_t size() const { return v.size(); }

  std::size_t offset(int in, int ic, int iy, int ix) const {
    return ((static_cast<std::size_t>(in) * c + ic) * h + iy) * w + ix;
  }

  T& at(int in, int ic, int iy, int ix) { return v[offset(in, ic, iy, ix)]; }
  T at(int in, int ic, int iy, int ix) const {
    return v[offset(in, ic, iy, ix)];
  }

  T* plane(int in, int ic) { return v.data() + offset(in, ic, 0, 0); }
  const T* plane(int in, int ic) const {
    return v.data() + offset(in, ic, 0, 0);
  }

  bool same_shape(const Tensor4& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }

  bool all_finite() const {
    for (T x : v)
      if (!std::isfinite(static_cast<double>(x))) return false;
    return true;
  }

  void fill(T x) { v.assign(v.size(), x); }

  template <typename U>
  Tensor4<U> cast() const {
    Tensor4<U> out(n, c, h, w);
    for (std::size_t i = 0; i < v.size(); ++i)
      out.v[i] = static_cast<U>(v[i]);
    return out;
  }
};

using TensorF = Tensor4<float>;
using TensorD = Tensor4<double>;

template <typename T>
std::string shape_str(const Tensor4<T>& t) {
  return "(" + std::to_string(t.n) + "," + std::to_string(t.c) + "," +
         std::to_string(t.h) + "," + std::to_string(t.w) + ")";
}

}  // namespace prorez

#endif  // PROREZ_TENSOR_HPP
