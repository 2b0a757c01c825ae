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

#ifndef PROREZ_ERRORS_HPP
#define PROREZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prorez {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller misuse: bad subcommand, wrong argument combination, missing params.
/// CLI exit code 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

/// A required upstream artifact (manifest, checkpoint, plan) does not exist.
/// CLI exit code 3.
class MissingArtifactError : public Error {
 public:
  explicit MissingArtifactError(const std::string& msg) : Error(msg) {}
};

/// Invalid data: shape mismatches, out-of-range labels, malformed files,
/// stale artifacts. CLI exit code 4.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Numeric failure: non-finite loss or gradient, divergence. CLI exit code 5.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// Checkpoint file problems, one kind per failure mode.
class CheckpointError : public ValidationError {
 public:
  enum class Kind { BadMagic, BadVersion, Truncated, SpecMismatch, Io };

  CheckpointError(Kind kind, const std::string& msg)
      : ValidationError(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace prorez

#endif  // PROREZ_ERRORS_HPP
