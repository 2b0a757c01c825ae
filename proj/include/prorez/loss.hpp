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

#ifndef PROREZ_LOSS_HPP
#define PROREZ_LOSS_HPP

#include <cmath>
#include <vector>

#include "prorez/tensor.hpp"

namespace prorez {

template <typename T>
struct LossResult {
  double loss = 0.0;
  Tensor4<T> grad_logits;
};

/// Mean cross entropy over the batch with log-sum-exp stabilization.
/// grad = (softmax - onehot) / n.
template <typename T>
LossResult<T> softmax_cross_entropy(const Tensor4<T>& logits,
                                    const std::vector<int>& labels) {
  if (logits.h != 1 || logits.w != 1)
    throw ValidationError("logits must be (n, C, 1, 1), got " +
                          shape_str(logits));
  const int n = logits.n, num_classes = logits.c;
  if (n < 1) throw ValidationError("softmax_cross_entropy needs n >= 1");
  if (static_cast<int>(labels.size()) != n)
    throw ValidationError("label count does not match batch size");
  for (int lab : labels)
    if (lab < 0 || lab >= num_classes)
      throw ValidationError("label " + std::to_string(lab) +
                            " out of range [0, " +
                            std::to_string(num_classes) + ")");
  LossResult<T> res;
  res.grad_logits = Tensor4<T>(n, num_classes, 1, 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double mx = logits.at(i, 0, 0, 0);
    for (int c = 1; c < num_classes; ++c)
      mx = std::max(mx, static_cast<double>(logits.at(i, c, 0, 0)));
    double denom = 0.0;
    for (int c = 0; c < num_classes; ++c)
      denom += std::exp(static_cast<double>(logits.at(i, c, 0, 0)) - mx);
    const double log_denom = std::log(denom);
    const double z_lab =
        static_cast<double>(logits.at(i, labels[i], 0, 0)) - mx;
    total += log_denom - z_lab;
    for (int c = 0; c < num_classes; ++c) {
      const double p =
          std::exp(static_cast<double>(logits.at(i, c, 0, 0)) - mx) / denom;
      const double onehot = (c == labels[i]) ? 1.0 : 0.0;
      res.grad_logits.at(i, c, 0, 0) = static_cast<T>((p - onehot) / n);
    }
  }
  res.loss = total / n;
  return res;
}

}  // namespace prorez

#endif  // PROREZ_LOSS_HPP
