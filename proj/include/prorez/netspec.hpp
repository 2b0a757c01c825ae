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

#ifndef PROREZ_NETSPEC_HPP
#define PROREZ_NETSPEC_HPP

#include <string>
#include <utility>
#include <vector>

namespace prorez {

/// One VGG-style block: `convs` repetitions of [3x3 conv + ReLU], then a 2x2
/// max pool. The pool halves the spatial side.
struct BlockSpec {
  int convs = 1;
  int out_channels = 0;

  bool operator==(const BlockSpec&) const = default;
};

/// Declarative sequential architecture: blocks, then a flatten, then the
/// classifier head (optional hidden linear+ReLU pairs and a final linear).
struct NetworkSpec {
  std::vector<BlockSpec> blocks;
  std::vector<int> head_hidden;
  int num_classes = 0;
  int input_side = 0;
  int input_channels = 1;

  bool operator==(const NetworkSpec&) const = default;
};

/// Throws ValidationError when the spec breaks its invariants.
void validate_spec(const NetworkSpec& spec);

/// (channels, side) after each block. Errors name the block at which the
/// side stops being divisible by 2.
std::vector<std::pair<int, int>> infer_shapes(const NetworkSpec& spec,
                                              int input_side);

/// Flattened feature count feeding the head.
int head_input_features(const NetworkSpec& spec);

/// Total learnable parameter count (weights + biases).
long long parameter_count(const NetworkSpec& spec);

/// Block-list text form used in configs and checkpoint descriptors:
/// "16,32,64" (1 conv each) or "8x2,16x2" (channels x convs).
std::string format_blocks(const std::vector<BlockSpec>& blocks);
std::vector<BlockSpec> parse_blocks(const std::string& text);

std::string format_int_list(const std::vector<int>& xs);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace prorez

#endif  // PROREZ_NETSPEC_HPP
