// Copyright 2026 The oica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oica {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  RankDeficient,
  DomainError,
  DegenerateCandidate,
  DegenerateRow,
  AllCandidatesDegenerate,
  NoCandidates,
  IllConditionedComplement,
  MixingGenerationFailed,
  FormatError,
  ChecksumMismatch,
  IoError,
  ZeroVector,
  DatasetMismatch,
};

/// Stable identifier for an error code, e.g. "RankDeficient".
const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure in a matrix or metadata file. Line numbers are 1-based;
/// the byte offset points at the start of the offending token (or line).
class FormatError : public Error {
 public:
  FormatError(const std::string& path, std::size_t line, std::size_t byte_offset,
              const std::string& detail);
  std::size_t line() const noexcept { return line_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

}  // namespace oica
