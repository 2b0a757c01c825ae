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

#ifndef PROREZ_PARALLEL_HPP
#define PROREZ_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prorez {

/// Process-wide worker cap used by every parallel kernel (the CLI --threads
/// flag lands here). All kernels partition work so that each output element
/// is written by exactly one worker with a fixed inner summation order, so
/// results are bit-identical for every thread count.
void set_num_threads(int n);
int num_threads();

/// Static-schedule parallel loop over [begin, end). Falls back to a plain
/// loop when OpenMP is unavailable or one worker is requested.
template <typename F>
void parallel_for(int begin, int end, F&& body) {
#ifdef _OPENMP
  const int nt = num_threads();
  if (nt > 1 && end - begin > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
#endif
  for (int i = begin; i < end; ++i) body(i);
}

}  // namespace prorez

#endif  // PROREZ_PARALLEL_HPP
