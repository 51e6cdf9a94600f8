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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "oica/matrix.hpp"
#include "oica/separation.hpp"
#include "oica/signal_model.hpp"
#include "oica/sourcegen.hpp"

namespace oica {

enum class MatrixFormat { Auto, Text, Binary };

/// Text: "rows cols" then one line per row, entries separated by single
/// spaces with 17 significant digits.
/// Binary: "OICA", version 1, reserved 0, u64 rows, u64 cols, then the
/// row-major payload; all integers and reals little-endian.
void write_matrix(const std::filesystem::path& path, const RealMatrix& m, MatrixFormat format);

/// Auto picks binary when the file starts with the magic bytes. Zero-row
/// matrices are accepted (an empty separating matrix is a valid result).
RealMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format = MatrixFormat::Auto);

std::string encode_matrix_text(const RealMatrix& m);
std::string encode_matrix_binary(const RealMatrix& m);
RealMatrix decode_matrix_text(const std::string& bytes, const std::string& origin = "<memory>");
RealMatrix decode_matrix_binary(const std::string& bytes, const std::string& origin = "<memory>");

/// 64-bit FNV-1a over the little-endian IEEE-754 payload (no header).
std::uint64_t content_hash(const RealMatrix& m);
std::string hex64(std::uint64_t v);

/// Shortest text that reads back to the same double.
std::string format_real(double v);

/// On-disk dataset bundle: X.mat, optional A.mat and S.mat, meta.txt.
struct DatasetBundle {
  Dataset dataset;
  SourceSpec spec;  // rhos, gaussian_count, samples, seed
  std::string observed_hash;
};

void write_dataset(const std::filesystem::path& dir, const Dataset& ds, const SourceSpec& spec,
                   MatrixFormat format = MatrixFormat::Binary);
/// Verifies every stored hash; throws ChecksumMismatch on tampering.
DatasetBundle read_dataset(const std::filesystem::path& dir);

struct RunRecord {
  Algorithm algorithm = Algorithm::Fast;
  SeparationOptions options;
  std::string dataset_path;
  std::string dataset_hash;
  SeparationResult result;
  /// result.w composed with the whitening matrix (raw-signal coordinates).
  RealMatrix unmixing;
};

/// Directory with meta.txt (sorted key=value lines), W.mat, unmixing.mat,
/// upsilon.csv and timing.csv. Output is a pure function of the record.
void write_run_record(const std::filesystem::path& dir, const RunRecord& record,
                      MatrixFormat format = MatrixFormat::Binary);
/// With verify_dataset, rehashes <dataset_path>/X.mat and throws
/// ChecksumMismatch when it no longer matches.
RunRecord read_run_record(const std::filesystem::path& dir, bool verify_dataset = true);

struct RecordComparison {
  /// Max over rows of min(max|a-b|, max|a+b|); infinity if row counts differ.
  double max_w_deviation = 0.0;
  double max_upsilon_delta = 0.0;
  /// total_seconds(a) / total_seconds(b).
  double speed_ratio = 0.0;
  bool same_stop_index = false;
  bool match = false;
};

/// Throws DimensionMismatch when the records disagree on N, and
/// DatasetMismatch when they reference different dataset contents.
RecordComparison compare_records(const RunRecord& a, const RunRecord& b, double tol);

}  // namespace oica
