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

#include "oica/error.hpp"

#include "oica/matrix.hpp"

namespace oica {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateCandidate: return "DegenerateCandidate";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
    case ErrorCode::AllCandidatesDegenerate: return "AllCandidatesDegenerate";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::IllConditionedComplement: return "IllConditionedComplement";
    case ErrorCode::MixingGenerationFailed: return "MixingGenerationFailed";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DatasetMismatch: return "DatasetMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

FormatError::FormatError(const std::string& path, std::size_t line, std::size_t byte_offset,
                         const std::string& detail)
    : Error(ErrorCode::FormatError, path + ": line " + std::to_string(line) + " (byte " +
                                        std::to_string(byte_offset) + "): " + detail),
      line_(line),
      byte_offset_(byte_offset) {}

void require_valid(const RealMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be non-empty");
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " contains NaN or Inf");
}

}  // namespace oica
