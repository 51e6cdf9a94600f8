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

#include "oica/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "oica/error.hpp"

namespace oica {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'O', 'I', 'C', 'A'};
constexpr unsigned char kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 8 + 8;

using Meta = std::map<std::string, std::string>;

void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xffu));
}

std::uint64_t get_u64(const std::string& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + k])) << (8 * k);
  return v;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path.string());
  return buf.str();
}

void spit(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
}

// Splits a line on single spaces; an empty token means a doubled or
// trailing separator.
std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t stop = line.find(' ', start);
    tokens.push_back(line.substr(start, stop == std::string_view::npos ? stop : stop - start));
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  return tokens;
}

bool parse_real(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
  return ec == std::errc{} && ptr == last && !tok.empty();
}

bool parse_u64(std::string_view tok, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && !tok.empty();
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out.push_back(',');
    out += format_real(values[k]);
  }
  return out;
}

template <class T>
std::string join_ints(const std::vector<T>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out.push_back(',');
    out += std::to_string(values[k]);
  }
  return out;
}

std::string encode_meta(const Meta& meta) {
  std::string out;
  for (const auto& [key, value] : meta) out += key + "=" + value + "\n";
  return out;
}

Meta decode_meta(const std::string& bytes, const std::string& origin) {
  Meta meta;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    ++line_no;
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string::npos) end = bytes.size();
    const std::string line = bytes.substr(pos, end - pos);
    if (!line.empty()) {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos || eq == 0)
        throw FormatError(origin, line_no, pos, "expected key=value");
      if (!meta.emplace(line.substr(0, eq), line.substr(eq + 1)).second)
        throw FormatError(origin, line_no, pos, "duplicate key " + line.substr(0, eq));
    }
    pos = end + 1;
  }
  return meta;
}

const std::string& need(const Meta& meta, const std::string& key, const std::string& origin) {
  auto it = meta.find(key);
  if (it == meta.end()) throw FormatError(origin, 0, 0, "missing key " + key);
  return it->second;
}

std::vector<double> split_reals(const std::string& text, const std::string& origin) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t stop = text.find(',', start);
    const std::string_view tok =
        std::string_view(text).substr(start, stop == std::string::npos ? stop : stop - start);
    double v = 0.0;
    if (!parse_real(tok, v)) throw FormatError(origin, 0, 0, "bad real '" + std::string(tok) + "'");
    out.push_back(v);
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  return out;
}

std::vector<std::uint64_t> split_u64s(const std::string& text, const std::string& origin) {
  std::vector<std::uint64_t> out;
  for (double v : split_reals(text, origin)) {
    if (!(v >= 0.0) || v != std::floor(v)) throw FormatError(origin, 0, 0, "bad count");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::uint64_t meta_u64(const Meta& meta, const std::string& key, const std::string& origin) {
  std::uint64_t v = 0;
  if (!parse_u64(need(meta, key, origin), v))
    throw FormatError(origin, 0, 0, "bad integer for " + key);
  return v;
}

double meta_real(const Meta& meta, const std::string& key, const std::string& origin) {
  double v = 0.0;
  if (!parse_real(need(meta, key, origin), v))
    throw FormatError(origin, 0, 0, "bad real for " + key);
  return v;
}

const char* format_name(MatrixFormat f) { return f == MatrixFormat::Text ? "text" : "binary"; }

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) out[static_cast<std::size_t>(k)] = kDigits[v & 0xfu];
  return out;
}

std::uint64_t content_hash(const RealMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto bits = std::bit_cast<std::uint64_t>(m(r, c));
      for (int k = 0; k < 8; ++k) {
        h ^= (bits >> (8 * k)) & 0xffu;
        h *= 0x100000001b3ULL;
      }
    }
  }
  return h;
}

std::string encode_matrix_text(const RealMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out.push_back(' ');
      out += format_real(m(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

std::string encode_matrix_binary(const RealMatrix& m) {
  std::string out;
  out.reserve(kHeaderBytes + static_cast<std::size_t>(m.size()) * 8);
  out.append(kMagic, 4);
  out.push_back(static_cast<char>(kVersion));
  out.push_back('\0');
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_u64(out, std::bit_cast<std::uint64_t>(m(r, c)));
  return out;
}

RealMatrix decode_matrix_text(const std::string& bytes, const std::string& origin) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line, std::size_t& start) {
    if (pos >= bytes.size()) return false;
    start = pos;
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string::npos) end = bytes.size();
    line = std::string_view(bytes).substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  std::size_t start = 0;
  if (!next_line(line, start)) throw FormatError(origin, 1, 0, "missing 'rows cols' header");
  const auto head = split_spaces(line);
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  if (head.size() != 2 || !parse_u64(head[0], rows) || !parse_u64(head[1], cols))
    throw FormatError(origin, 1, 0, "header must be 'rows cols'");
  if (cols == 0) throw FormatError(origin, 1, 0, "matrix must have at least one column");
  if (rows > (std::uint64_t{1} << 31) || cols > (std::uint64_t{1} << 31))
    throw FormatError(origin, 1, 0, "matrix dimensions too large");

  RealMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!next_line(line, start))
      throw FormatError(origin, line_no + 1, bytes.size(),
                        "expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
    const auto tokens = split_spaces(line);
    if (tokens.size() != cols)
      throw FormatError(origin, line_no, start,
                        "expected " + std::to_string(cols) + " columns, found " +
                            std::to_string(tokens.size()));
    for (std::uint64_t c = 0; c < cols; ++c) {
      double v = 0.0;
      const std::size_t at = static_cast<std::size_t>(tokens[c].data() - bytes.data());
      if (!parse_real(tokens[c], v) || !std::isfinite(v))
        throw FormatError(origin, line_no, at, "bad value '" + std::string(tokens[c]) + "'");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  while (next_line(line, start))
    if (!line.empty()) throw FormatError(origin, line_no, start, "trailing data after last row");
  return m;
}

RealMatrix decode_matrix_binary(const std::string& bytes, const std::string& origin) {
  if (bytes.size() < kHeaderBytes) throw FormatError(origin, 0, bytes.size(), "truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw FormatError(origin, 0, 0, "bad magic");
  if (static_cast<unsigned char>(bytes[4]) != kVersion)
    throw FormatError(origin, 0, 4, "unsupported version " + std::to_string(bytes[4]));
  if (bytes[5] != '\0') throw FormatError(origin, 0, 5, "reserved byte must be 0");
  const std::uint64_t rows = get_u64(bytes, 6);
  const std::uint64_t cols = get_u64(bytes, 14);
  if (cols == 0) throw FormatError(origin, 0, 14, "matrix must have at least one column");
  if (rows > (std::uint64_t{1} << 31) || cols > (std::uint64_t{1} << 31))
    throw FormatError(origin, 0, 6, "matrix dimensions too large");
  const std::uint64_t expect = kHeaderBytes + rows * cols * 8;
  if (bytes.size() != expect)
    throw FormatError(origin, 0, std::min<std::size_t>(bytes.size(), expect),
                      "payload is " + std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string(expect));
  RealMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t at = kHeaderBytes;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, at += 8) {
      const double v = std::bit_cast<double>(get_u64(bytes, at));
      if (!std::isfinite(v)) throw FormatError(origin, 0, at, "non-finite value");
      m(r, c) = v;
    }
  }
  return m;
}

void write_matrix(const fs::path& path, const RealMatrix& m, MatrixFormat format) {
  spit(path, format == MatrixFormat::Text ? encode_matrix_text(m) : encode_matrix_binary(m));
}

RealMatrix read_matrix(const fs::path& path, MatrixFormat format) {
  const std::string bytes = slurp(path);
  if (format == MatrixFormat::Auto)
    format = bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0 ? MatrixFormat::Binary
                                                                             : MatrixFormat::Text;
  return format == MatrixFormat::Binary ? decode_matrix_binary(bytes, path.string())
                                        : decode_matrix_text(bytes, path.string());
}

void write_dataset(const fs::path& dir, const Dataset& ds, const SourceSpec& spec,
                   MatrixFormat format) {
  if (format == MatrixFormat::Auto) format = MatrixFormat::Binary;
  ensure_dir(dir);
  Meta meta;
  meta["format"] = format_name(format);
  meta["gaussian_count"] = std::to_string(spec.gaussian_count);
  meta["rhos"] = join_reals(spec.rhos);
  meta["rows"] = std::to_string(ds.observed.rows());
  meta["samples"] = std::to_string(ds.observed.cols());
  meta["seed"] = std::to_string(spec.seed);
  write_matrix(dir / "X.mat", ds.observed, format);
  meta["hash_X"] = hex64(content_hash(ds.observed));
  if (ds.mixing) {
    write_matrix(dir / "A.mat", *ds.mixing, format);
    meta["hash_A"] = hex64(content_hash(*ds.mixing));
  }
  if (ds.sources) {
    write_matrix(dir / "S.mat", *ds.sources, format);
    meta["hash_S"] = hex64(content_hash(*ds.sources));
  }
  if (ds.true_kurtoses) meta["kurtoses"] = join_reals(*ds.true_kurtoses);
  spit(dir / "meta.txt", encode_meta(meta));
}

DatasetBundle read_dataset(const fs::path& dir) {
  const fs::path meta_path = dir / "meta.txt";
  const std::string origin = meta_path.string();
  const Meta meta = decode_meta(slurp(meta_path), origin);

  auto load_checked = [&](const char* file, const std::string& key) {
    RealMatrix m = read_matrix(dir / file);
    const std::string actual = hex64(content_hash(m));
    if (actual != need(meta, key, origin))
      throw Error(ErrorCode::ChecksumMismatch, (dir / file).string() + " hash " + actual +
                                                   " does not match recorded " + meta.at(key));
    return m;
  };

  DatasetBundle b;
  b.dataset.observed = load_checked("X.mat", "hash_X");
  b.observed_hash = meta.at("hash_X");
  if (meta.count("hash_A")) b.dataset.mixing = load_checked("A.mat", "hash_A");
  if (meta.count("hash_S")) b.dataset.sources = load_checked("S.mat", "hash_S");
  if (meta.count("kurtoses")) b.dataset.true_kurtoses = split_reals(meta.at("kurtoses"), origin);

  b.spec.rhos = split_reals(need(meta, "rhos", origin), origin);
  b.spec.gaussian_count = meta_u64(meta, "gaussian_count", origin);
  b.spec.samples = meta_u64(meta, "samples", origin);
  b.spec.seed = meta_u64(meta, "seed", origin);

  const auto n = b.dataset.observed.rows();
  const auto m = b.dataset.observed.cols();
  if (n < 1) throw FormatError((dir / "X.mat").string(), 0, 0, "observed matrix has no rows");
  if (static_cast<std::uint64_t>(m) != b.spec.samples ||
      static_cast<std::uint64_t>(n) != meta_u64(meta, "rows", origin))
    throw Error(ErrorCode::DimensionMismatch, "X.mat shape disagrees with meta.txt");
  if (b.dataset.mixing && (b.dataset.mixing->rows() != n || b.dataset.mixing->cols() != n))
    throw Error(ErrorCode::DimensionMismatch, "A.mat must be N x N");
  if (b.dataset.sources && (b.dataset.sources->rows() != n || b.dataset.sources->cols() != m))
    throw Error(ErrorCode::DimensionMismatch, "S.mat must be N x M");
  if (b.dataset.true_kurtoses && b.dataset.true_kurtoses->size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::DimensionMismatch, "kurtoses must have N entries");
  return b;
}

void write_run_record(const fs::path& dir, const RunRecord& rec, MatrixFormat format) {
  if (format == MatrixFormat::Auto) format = MatrixFormat::Binary;
  ensure_dir(dir);
  const SeparationResult& res = rec.result;
  const SeparationOptions& opt = rec.options;

  std::vector<std::size_t> iters, conv, unconv, degen, winner;
  std::vector<int> winner_ok;
  std::vector<double> diag_ups;
  for (const ComponentDiagnostics& d : res.components) {
    iters.push_back(d.iterations);
    conv.push_back(d.converged);
    unconv.push_back(d.unconverged);
    degen.push_back(d.degenerate);
    winner.push_back(d.winner);
    winner_ok.push_back(d.winner_converged ? 1 : 0);
    diag_ups.push_back(d.upsilon);
  }

  Meta meta;
  meta["algorithm"] = algorithm_name(rec.algorithm);
  meta["candidates"] = std::to_string(opt.candidates);
  meta["complement_floor"] = format_real(opt.complement_floor);
  meta["dataset_hash"] = rec.dataset_hash;
  meta["dataset_path"] = rec.dataset_path;
  meta["diag_converged"] = join_ints(conv);
  meta["diag_degenerate"] = join_ints(degen);
  meta["diag_iterations"] = join_ints(iters);
  meta["diag_unconverged"] = join_ints(unconv);
  meta["diag_upsilon"] = join_reals(diag_ups);
  meta["diag_winner"] = join_ints(winner);
  meta["diag_winner_converged"] = join_ints(winner_ok);
  meta["eps"] = format_real(opt.tolerance);
  meta["extracted"] = std::to_string(res.extracted());
  meta["format"] = format_name(format);
  meta["gaussianity_test"] = opt.gaussianity_test ? "1" : "0";
  meta["max_iterations"] = std::to_string(opt.max_iterations);
  meta["reference_init"] =
      opt.reference_init == ReferenceInit::MatchedComplement ? "matched" : "full";
  meta["seed"] = std::to_string(opt.seed);
  meta["stop_index"] = std::to_string(res.stop_index);
  meta["stop_upsilon"] = format_real(res.stop_upsilon);
  meta["strict_paper"] = opt.strict_paper ? "1" : "0";
  meta["total_seconds"] = format_real(res.total_seconds);

  spit(dir / "meta.txt", encode_meta(meta));
  write_matrix(dir / "W.mat", res.w, format);
  write_matrix(dir / "unmixing.mat", rec.unmixing, format);

  std::string ups;
  for (double u : res.upsilon) ups += format_real(u) + "\n";
  spit(dir / "upsilon.csv", ups);

  std::string timing = "component_index,seconds\n";
  for (std::size_t k = 0; k < res.components.size(); ++k)
    timing += std::to_string(k + 1) + "," + format_real(res.components[k].seconds) + "\n";
  spit(dir / "timing.csv", timing);
}

RunRecord read_run_record(const fs::path& dir, bool verify_dataset) {
  const std::string origin = (dir / "meta.txt").string();
  const Meta meta = decode_meta(slurp(dir / "meta.txt"), origin);

  RunRecord rec;
  const std::string& algo = need(meta, "algorithm", origin);
  if (algo == "fast") rec.algorithm = Algorithm::Fast;
  else if (algo == "reference") rec.algorithm = Algorithm::Reference;
  else throw FormatError(origin, 0, 0, "unknown algorithm " + algo);

  SeparationOptions& opt = rec.options;
  opt.candidates = meta_u64(meta, "candidates", origin);
  opt.complement_floor = meta_real(meta, "complement_floor", origin);
  opt.tolerance = meta_real(meta, "eps", origin);
  opt.max_iterations = meta_u64(meta, "max_iterations", origin);
  opt.seed = meta_u64(meta, "seed", origin);
  opt.strict_paper = need(meta, "strict_paper", origin) == "1";
  opt.gaussianity_test = need(meta, "gaussianity_test", origin) == "1";
  opt.reference_init = need(meta, "reference_init", origin) == "full"
                           ? ReferenceInit::FullSpace
                           : ReferenceInit::MatchedComplement;
  rec.dataset_hash = need(meta, "dataset_hash", origin);
  rec.dataset_path = need(meta, "dataset_path", origin);

  SeparationResult& res = rec.result;
  res.w = read_matrix(dir / "W.mat");
  rec.unmixing = read_matrix(dir / "unmixing.mat");
  res.stop_index = meta_u64(meta, "stop_index", origin);
  res.stop_upsilon = meta_real(meta, "stop_upsilon", origin);
  res.total_seconds = meta_real(meta, "total_seconds", origin);
  res.upsilon = split_reals([&] {
    std::string s = slurp(dir / "upsilon.csv");
    for (char& c : s) if (c == '\n') c = ',';
    if (!s.empty() && s.back() == ',') s.pop_back();
    return s;
  }(), (dir / "upsilon.csv").string());

  const auto iters = split_u64s(need(meta, "diag_iterations", origin), origin);
  const auto conv = split_u64s(need(meta, "diag_converged", origin), origin);
  const auto unconv = split_u64s(need(meta, "diag_unconverged", origin), origin);
  const auto degen = split_u64s(need(meta, "diag_degenerate", origin), origin);
  const auto winner = split_u64s(need(meta, "diag_winner", origin), origin);
  const auto winner_ok = split_u64s(need(meta, "diag_winner_converged", origin), origin);
  const auto diag_ups = split_reals(need(meta, "diag_upsilon", origin), origin);

  const std::string timing_origin = (dir / "timing.csv").string();
  const std::string timing = slurp(dir / "timing.csv");
  std::vector<double> seconds;
  {
    std::size_t pos = timing.find('\n');
    if (pos == std::string::npos || timing.substr(0, pos) != "component_index,seconds")
      throw FormatError(timing_origin, 1, 0, "expected header component_index,seconds");
    std::size_t line_no = 1;
    ++pos;
    while (pos < timing.size()) {
      ++line_no;
      std::size_t end = timing.find('\n', pos);
      if (end == std::string::npos) end = timing.size();
      const std::string line = timing.substr(pos, end - pos);
      const std::size_t comma = line.find(',');
      std::uint64_t idx = 0;
      double secs = 0.0;
      if (comma == std::string::npos || !parse_u64(std::string_view(line).substr(0, comma), idx) ||
          !parse_real(std::string_view(line).substr(comma + 1), secs) ||
          idx != seconds.size() + 1)
        throw FormatError(timing_origin, line_no, pos, "expected index,seconds");
      seconds.push_back(secs);
      pos = end + 1;
    }
  }

  const std::size_t count = iters.size();
  if (conv.size() != count || unconv.size() != count || degen.size() != count ||
      winner.size() != count || winner_ok.size() != count || diag_ups.size() != count ||
      seconds.size() != count)
    throw FormatError(origin, 0, 0, "per-component diagnostic lists differ in length");
  for (std::size_t k = 0; k < count; ++k) {
    ComponentDiagnostics d;
    d.iterations = iters[k];
    d.converged = conv[k];
    d.unconverged = unconv[k];
    d.degenerate = degen[k];
    d.winner = winner[k];
    d.winner_converged = winner_ok[k] != 0;
    d.upsilon = diag_ups[k];
    d.seconds = seconds[k];
    res.components.push_back(d);
  }
  if (res.upsilon.size() != res.extracted() ||
      meta_u64(meta, "extracted", origin) != res.extracted())
    throw FormatError(origin, 0, 0, "extracted count disagrees with W.mat / upsilon.csv");

  if (verify_dataset) {
    const RealMatrix x = read_matrix(fs::path(rec.dataset_path) / "X.mat");
    const std::string actual = hex64(content_hash(x));
    if (actual != rec.dataset_hash)
      throw Error(ErrorCode::ChecksumMismatch, "dataset " + rec.dataset_path + " hash " + actual +
                                                   " does not match record " + rec.dataset_hash);
  }
  return rec;
}

RecordComparison compare_records(const RunRecord& a, const RunRecord& b, double tol) {
  if (a.result.w.cols() != b.result.w.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "records separate " + std::to_string(a.result.w.cols()) + " vs " +
                    std::to_string(b.result.w.cols()) + " channels");
  if (a.dataset_hash != b.dataset_hash)
    throw Error(ErrorCode::DatasetMismatch, "records reference different datasets (" +
                                                a.dataset_hash + " vs " + b.dataset_hash + ")");

  RecordComparison out;
  const RealMatrix& wa = a.result.w;
  const RealMatrix& wb = b.result.w;
  if (wa.rows() != wb.rows()) {
    out.max_w_deviation = std::numeric_limits<double>::infinity();
  } else {
    for (Eigen::Index r = 0; r < wa.rows(); ++r) {
      const double same = (wa.row(r) - wb.row(r)).cwiseAbs().maxCoeff();
      const double flip = (wa.row(r) + wb.row(r)).cwiseAbs().maxCoeff();
      out.max_w_deviation = std::max(out.max_w_deviation, std::min(same, flip));
    }
  }
  const std::size_t common = std::min(a.result.upsilon.size(), b.result.upsilon.size());
  for (std::size_t k = 0; k < common; ++k)
    out.max_upsilon_delta =
        std::max(out.max_upsilon_delta, std::abs(a.result.upsilon[k] - b.result.upsilon[k]));
  out.speed_ratio = b.result.total_seconds > 0.0
                        ? a.result.total_seconds / b.result.total_seconds
                        : std::numeric_limits<double>::quiet_NaN();
  out.same_stop_index = a.result.stop_index == b.result.stop_index;
  out.match = out.same_stop_index && out.max_w_deviation <= tol;
  return out;
}

}  // namespace oica
