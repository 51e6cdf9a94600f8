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

// oica: command-line front end. Talks to the library through the C API only.
//
// Exit codes: 0 ok, 1 compare mismatch, 2 usage, 3 I/O, 4 algorithm error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oica/oica.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitAlgorithm = 4;

struct Deleter {
  void operator()(oica_matrix* p) const { oica_matrix_free(p); }
  void operator()(oica_dataset* p) const { oica_dataset_free(p); }
  void operator()(oica_whitening* p) const { oica_whitening_free(p); }
  void operator()(oica_result* p) const { oica_result_free(p); }
  void operator()(oica_record* p) const { oica_record_free(p); }
  void operator()(oica_fluctuation* p) const { oica_fluctuation_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Deleter>;

// Carries an exit code out of a subcommand.
struct Failure {
  int code;
};

[[noreturn]] void fail(int code, const std::string& message) {
  std::fprintf(stderr, "oica: %s\n", message.c_str());
  throw Failure{code};
}

int exit_code_for(oica_status s) {
  switch (s) {
    case OICA_ERR_IO:
    case OICA_ERR_FORMAT:
    case OICA_ERR_CHECKSUM_MISMATCH:
      return kExitIo;
    default:
      return kExitAlgorithm;
  }
}

void check(oica_status s, const char* context) {
  if (s == OICA_OK) return;
  fail(exit_code_for(s), std::string(context) + ": " + oica_last_error());
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

oica_format parse_format(const std::string& s) {
  return s == "text" ? OICA_FORMAT_TEXT : OICA_FORMAT_BINARY;
}

oica_algorithm parse_algorithm(const std::string& s) {
  return s == "reference" ? OICA_ALGORITHM_REFERENCE : OICA_ALGORITHM_FAST;
}

void ensure_distinct(const std::string& out, const std::string& in) {
  std::error_code ec;
  const fs::path a = fs::weakly_canonical(out, ec);
  const fs::path b = fs::weakly_canonical(in, ec);
  if (a == b) fail(kExitUsage, "output path must differ from input path " + in);
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(kExitIo, "cannot create directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  out.flush();
  if (!out) fail(kExitIo, "cannot write " + path.string());
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

// Population standard deviation, so a single repeat reports zero spread.
Stats stats(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  for (double x : v) s.stddev += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(v.size()));
  return s;
}

// ---------------------------------------------------------------------------
// Shared run plumbing.

struct SepFlags {
  std::string algorithm = "fast";
  std::size_t candidates = 100;
  std::size_t max_iterations = 30;
  double eps = 1e-6;
  bool strict_paper = false;
  bool full_space_init = false;
  bool no_gaussianity_test = false;
};

void add_sep_flags(CLI::App* cmd, SepFlags& f) {
  cmd->add_option("-a,--algorithm", f.algorithm, "fast or reference")
      ->check(CLI::IsMember({"fast", "reference"}))
      ->capture_default_str();
  cmd->add_option("-K,--max-iterations", f.max_iterations, "Newton iterations per candidate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eps", f.eps, "convergence threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_flag("--strict-paper", f.strict_paper,
                "fast: drop candidates still moving after K iterations");
  cmd->add_flag("--full-space-init", f.full_space_init,
                "reference: draw starts in the full space instead of the complement");
  cmd->add_flag("--no-gaussianity-test", f.no_gaussianity_test,
                "extract all N components; report the threshold only");
}

oica_options to_options(const SepFlags& f, std::size_t candidates, std::uint64_t seed) {
  oica_options o = oica_options_default();
  o.candidates = candidates;
  o.max_iterations = f.max_iterations;
  o.tolerance = f.eps;
  o.seed = seed;
  o.strict_paper = f.strict_paper ? 1 : 0;
  o.full_space_init = f.full_space_init ? 1 : 0;
  o.skip_gaussianity_test = f.no_gaussianity_test ? 1 : 0;
  return o;
}

struct Prepared {
  Owned<oica_dataset> dataset;
  Owned<oica_matrix> whitened;
  Owned<oica_whitening> model;
  std::string hash;
};

Prepared prepare(const std::string& dir) {
  Prepared p;
  if (!fs::exists(fs::path(dir) / "meta.txt")) fail(kExitIo, "no dataset bundle at " + dir);
  oica_dataset* ds = nullptr;
  check(oica_dataset_read(dir.c_str(), &ds), "reading dataset");
  p.dataset.reset(ds);
  const oica_matrix* x = oica_dataset_observed(ds);
  p.hash = hex(oica_matrix_hash(x));
  oica_matrix* xw = nullptr;
  oica_whitening* model = nullptr;
  check(oica_center_whiten(x, 1e-12, &xw, &model), "whitening");
  p.whitened.reset(xw);
  p.model.reset(model);
  return p;
}

Owned<oica_result> separate(const Prepared& p, oica_algorithm algo, const oica_options& o) {
  oica_result* r = nullptr;
  check(oica_separate(algo, p.whitened.get(), &o, &r), "separation");
  return Owned<oica_result>(r);
}

Owned<oica_matrix> unmixing(const Prepared& p, const oica_result* r) {
  oica_matrix* u = nullptr;
  check(oica_compose_unmixing(oica_result_w(r), p.model.get(), &u), "composing unmixing matrix");
  return Owned<oica_matrix>(u);
}

// W in raw coordinates padded to N x N with zero rows for the part the run
// never extracted; the ordering error then charges one miss per absent row.
double ordering_error_of(const Prepared& p, const oica_result* r, const oica_matrix* sorted_a) {
  const Owned<oica_matrix> u = unmixing(p, r);
  double e = 0.0;
  check(oica_ordering_error(u.get(), sorted_a, 0.1, &e), "ordering error");
  return e;
}

// ---------------------------------------------------------------------------
// gen

struct GenFlags {
  std::vector<double> rhos;
  bool paper_grid = false;
  std::size_t gaussian = 0;
  long long samples = -1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "binary";
};

int cmd_gen(const GenFlags& f) {
  if (f.samples < 1) fail(kExitUsage, "--samples must be at least 1");
  std::vector<double> rhos = f.rhos;
  if (f.paper_grid) {
    double grid[32];
    const std::size_t n = oica_paper_rho_grid(grid, 32);
    rhos.insert(rhos.end(), grid, grid + n);
  }
  for (double r : rhos)
    if (!(r > 0.0) || !std::isfinite(r)) fail(kExitUsage, "--rho values must be positive");
  if (rhos.empty() && f.gaussian == 0) fail(kExitUsage, "dataset needs at least one row");

  oica_source_spec spec{rhos.data(), rhos.size(), f.gaussian,
                        static_cast<std::size_t>(f.samples), f.seed, 0};
  oica_dataset* raw = nullptr;
  check(oica_dataset_generate(&spec, &raw), "generating dataset");
  Owned<oica_dataset> ds(raw);
  check(oica_dataset_write(ds.get(), f.out.c_str(), parse_format(f.format)), "writing dataset");

  const std::size_t n = rhos.size() + f.gaussian;
  std::vector<double> kurt(n);
  oica_dataset_kurtoses(ds.get(), kurt.data(), n);
  std::printf("bundle %s\n", f.out.c_str());
  std::printf("rows %zu samples %lld seed %llu hash %s\n", n, f.samples,
              static_cast<unsigned long long>(f.seed),
              hex(oica_matrix_hash(oica_dataset_observed(ds.get()))).c_str());
  std::printf("%5s %22s %22s %22s\n", "row", "rho", "kurtosis", "upsilon");
  for (std::size_t k = 0; k < n; ++k) {
    double ups = 0.0;
    oica_upsilon(kurt[k], &ups);
    const std::string rho = k < rhos.size() ? real(rhos[k]) : "gaussian";
    std::printf("%5zu %22s %22s %22s\n", k + 1, rho.c_str(), real(kurt[k]).c_str(),
                real(ups).c_str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run

struct RunFlags {
  std::string dataset;
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "binary";
  SepFlags sep;
};

int cmd_run(const RunFlags& f) {
  ensure_distinct(f.out, f.dataset);
  const Prepared p = prepare(f.dataset);
  const oica_options o = to_options(f.sep, f.sep.candidates, f.seed);
  const oica_algorithm algo = parse_algorithm(f.sep.algorithm);
  const Owned<oica_result> r = separate(p, algo, o);
  const Owned<oica_matrix> u = unmixing(p, r.get());

  const std::string abs_dataset = fs::absolute(f.dataset).lexically_normal().string();
  oica_record* rec_raw = nullptr;
  check(oica_record_create(algo, &o, abs_dataset.c_str(), p.hash.c_str(), r.get(), u.get(),
                           &rec_raw),
        "building record");
  Owned<oica_record> rec(rec_raw);
  check(oica_record_write(rec.get(), f.out.c_str(), parse_format(f.format)), "writing record");

  const std::size_t n = oica_matrix_rows(oica_dataset_observed(p.dataset.get()));
  const std::size_t m = oica_matrix_cols(oica_dataset_observed(p.dataset.get()));
  std::printf("record %s\n", f.out.c_str());
  std::printf("algorithm %s L %zu K %zu eps %s seed %llu\n", f.sep.algorithm.c_str(),
              o.candidates, o.max_iterations, real(o.tolerance).c_str(),
              static_cast<unsigned long long>(o.seed));
  std::printf("%5s %22s %22s %12s %6s %9s\n", "i", "upsilon", "threshold", "seconds", "iters",
              "converged");
  for (std::size_t k = 0; k < oica_result_attempted(r.get()); ++k) {
    oica_component_info c{};
    check(oica_result_component(r.get(), k, &c), "reading diagnostics");
    std::printf("%5zu %22s %22s %12.6f %6zu %9zu%s\n", k + 1, real(c.upsilon).c_str(),
                real(oica_gaussianity_threshold(n, k + 1, m)).c_str(), c.seconds, c.iterations,
                c.converged, k < oica_result_extracted(r.get()) ? "" : "  gaussian: stop");
  }
  std::printf("extracted %zu of %zu, stop_index %zu, total %.6f s\n",
              oica_result_extracted(r.get()), n, oica_result_stop_index(r.get()),
              oica_result_total_seconds(r.get()));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  std::string dataset;
  std::string out;
  std::vector<std::size_t> ls = {1, 5, 10, 20, 50, 100};
  std::size_t repeats = 10;
  std::uint64_t base_seed = 0;
  SepFlags sep;
};

int cmd_sweep(const SweepFlags& f) {
  ensure_distinct(f.out, f.dataset);
  const Prepared p = prepare(f.dataset);
  if (!oica_dataset_mixing(p.dataset.get()))
    fail(kExitIo, "dataset bundle has no A.mat; ordering error needs the mixing matrix");
  oica_matrix* sorted_raw = nullptr;
  check(oica_dataset_sorted_mixing(p.dataset.get(), &sorted_raw), "sorting mixing matrix");
  const Owned<oica_matrix> sorted_a(sorted_raw);
  make_dir(f.out);

  const oica_algorithm algo = parse_algorithm(f.sep.algorithm);
  std::string err_csv = "L,mean,stddev\n";
  std::string time_csv = "L,mean,stddev\n";
  std::string count_csv = "L,mean,stddev\n";
  for (std::size_t l : f.ls) {
    std::vector<double> errs, times, counts;
    for (std::size_t t = 0; t < f.repeats; ++t) {
      const oica_options o = to_options(f.sep, l, f.base_seed + t);
      const Owned<oica_result> r = separate(p, algo, o);
      errs.push_back(ordering_error_of(p, r.get(), sorted_a.get()));
      times.push_back(oica_result_total_seconds(r.get()));
      counts.push_back(static_cast<double>(oica_result_extracted(r.get())));
    }
    const Stats e = stats(errs), tm = stats(times), c = stats(counts);
    const std::string ls = std::to_string(l);
    err_csv += ls + "," + real(e.mean) + "," + real(e.stddev) + "\n";
    time_csv += ls + "," + real(tm.mean) + "," + real(tm.stddev) + "\n";
    count_csv += ls + "," + real(c.mean) + "," + real(c.stddev) + "\n";
    std::printf("L %5zu  ordering_error %.6f +- %.6f  seconds %.4f  extracted %.2f\n", l, e.mean,
                e.stddev, tm.mean, c.mean);
    std::fflush(stdout);
  }
  write_text(fs::path(f.out) / "ordering_error_vs_L.csv", err_csv);
  write_text(fs::path(f.out) / "time_vs_L.csv", time_csv);
  write_text(fs::path(f.out) / "ngauss_count_vs_L.csv", count_csv);
  std::printf("wrote %s/{ordering_error_vs_L,time_vs_L,ngauss_count_vs_L}.csv\n", f.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fluct

struct FluctFlags {
  std::string dataset;
  std::string out;
  std::size_t repeats = 10;
  std::uint64_t base_seed = 0;
  bool same_seed = false;
  std::size_t band = 20;
  SepFlags sep;
};

int cmd_fluct(const FluctFlags& f) {
  if (f.repeats < 2) fail(kExitUsage, "fluctuation needs --repeats of at least 2");
  ensure_distinct(f.out, f.dataset);
  const Prepared p = prepare(f.dataset);
  const oica_algorithm algo = parse_algorithm(f.sep.algorithm);

  std::vector<Owned<oica_result>> results;
  std::size_t common = SIZE_MAX;
  for (std::size_t t = 0; t < f.repeats; ++t) {
    const oica_options o = to_options(f.sep, f.sep.candidates, f.base_seed + (f.same_seed ? 0 : t));
    results.push_back(separate(p, algo, o));
    common = std::min(common, oica_result_extracted(results.back().get()));
  }
  if (common == 0) fail(kExitAlgorithm, "some run extracted no components; nothing to compare");

  // Runs may stop at different depths; compare the ranks every run reached.
  std::vector<Owned<oica_matrix>> runs;
  std::vector<const oica_matrix*> views;
  for (const auto& r : results) {
    const oica_matrix* w = oica_result_w(r.get());
    oica_matrix* top = nullptr;
    check(oica_matrix_create(common, oica_matrix_cols(w), oica_matrix_data(w), &top),
          "copying runs");
    runs.emplace_back(top);
    views.push_back(top);
  }
  oica_fluctuation* raw = nullptr;
  check(oica_fluctuation_compute(views.data(), views.size(), f.band, &raw), "fluctuation");
  const Owned<oica_fluctuation> rep(raw);

  make_dir(f.out);
  std::string per = "rank,fluctuation\n";
  for (std::size_t k = 0; k < oica_fluctuation_components(rep.get()); ++k)
    per += std::to_string(k + 1) + "," + real(oica_fluctuation_value(rep.get(), k)) + "\n";
  write_text(fs::path(f.out) / "fluctuation_per_rank.csv", per);

  std::string groups = "group,first_rank,last_rank,mean\n";
  std::printf("compared %zu ranks over %zu runs\n", common, f.repeats);
  for (std::size_t k = 0; k < oica_fluctuation_group_count(rep.get()); ++k) {
    const char* name = nullptr;
    std::size_t first = 0, last = 0;
    double mean = 0.0;
    check(oica_fluctuation_group(rep.get(), k, &name, &first, &last, &mean), "group");
    groups += std::string(name) + "," + std::to_string(first + 1) + "," + std::to_string(last) +
              "," + real(mean) + "\n";
    std::printf("%-5s ranks %3zu-%-3zu mean fluctuation %s\n", name, first + 1, last,
                real(mean).c_str());
  }
  write_text(fs::path(f.out) / "fluctuation_groups.csv", groups);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareFlags {
  std::string a;
  std::string b;
  double tol = 1e-6;
  bool no_verify = false;
};

Owned<oica_record> load_record(const std::string& dir, bool verify) {
  if (!fs::exists(fs::path(dir) / "meta.txt")) fail(kExitIo, "no run record at " + dir);
  oica_record* r = nullptr;
  check(oica_record_read(dir.c_str(), verify ? 1 : 0, &r), "reading record");
  return Owned<oica_record>(r);
}

int cmd_compare(const CompareFlags& f) {
  const Owned<oica_record> a = load_record(f.a, !f.no_verify);
  const Owned<oica_record> b = load_record(f.b, !f.no_verify);
  oica_comparison c{};
  check(oica_record_compare(a.get(), b.get(), f.tol, &c), "comparing records");
  const oica_result* ra = oica_record_result(a.get());
  const oica_result* rb = oica_record_result(b.get());
  std::printf("max_w_deviation %s\n", real(c.max_w_deviation).c_str());
  std::printf("max_upsilon_delta %s\n", real(c.max_upsilon_delta).c_str());
  std::printf("extracted %zu vs %zu\n", oica_result_extracted(ra), oica_result_extracted(rb));
  std::printf("stop_index %zu vs %zu\n", oica_result_stop_index(ra), oica_result_stop_index(rb));
  std::printf("seconds %.6f vs %.6f (ratio %s)\n", oica_result_total_seconds(ra),
              oica_result_total_seconds(rb), real(c.speed_ratio).c_str());
  std::printf("%s at tol %s\n", c.match ? "MATCH" : "MISMATCH", real(f.tol).c_str());
  return c.match ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordering ICA: extract independent components in descending non-Gaussianity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(oica_version()));

  GenFlags gen;
  CLI::App* g = app.add_subcommand("gen", "Generate a synthetic dataset bundle");
  g->add_option("--rho", gen.rhos, "generalized-Gaussian shape (repeatable)");
  g->add_flag("--paper-grid", gen.paper_grid, "add the 20-value rho grid 2*2^(k/4), k=+-1..+-10");
  g->add_option("--gaussian", gen.gaussian, "number of Gaussian rows")->capture_default_str();
  g->add_option("--samples", gen.samples, "samples per row (M)")->required();
  g->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  g->add_option("-o,--out", gen.out, "bundle directory")->required();
  g->add_option("--format", gen.format, "matrix file format")
      ->check(CLI::IsMember({"text", "binary"}))
      ->capture_default_str();

  RunFlags run;
  CLI::App* r = app.add_subcommand("run", "Separate one dataset and write a run record");
  r->add_option("-d,--dataset", run.dataset, "dataset bundle")->required();
  r->add_option("-o,--out", run.out, "record directory")->required();
  r->add_option("-L,--candidates", run.sep.candidates, "random initializations per component")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  r->add_option("--seed", run.seed, "random seed")->capture_default_str();
  r->add_option("--format", run.format, "matrix file format")
      ->check(CLI::IsMember({"text", "binary"}))
      ->capture_default_str();
  add_sep_flags(r, run.sep);

  SweepFlags sweep;
  CLI::App* s = app.add_subcommand("sweep", "Ordering error, time and count against L");
  s->add_option("-d,--dataset", sweep.dataset, "dataset bundle")->required();
  s->add_option("-o,--out", sweep.out, "output directory for CSV files")->required();
  s->add_option("-L,--candidates", sweep.ls, "comma-separated list of L values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("-T,--repeats", sweep.repeats, "seeds per L (base-seed + t)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--base-seed", sweep.base_seed, "first seed")->capture_default_str();
  add_sep_flags(s, sweep.sep);

  FluctFlags fluct;
  CLI::App* fl = app.add_subcommand("fluct", "Run-to-run fluctuation of extracted components");
  fl->add_option("-d,--dataset", fluct.dataset, "dataset bundle")->required();
  fl->add_option("-o,--out", fluct.out, "output directory for CSV files")->required();
  fl->add_option("-L,--candidates", fluct.sep.candidates, "random initializations per component")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fl->add_option("-T,--repeats", fluct.repeats, "number of runs (>= 2)")->capture_default_str();
  fl->add_option("--base-seed", fluct.base_seed, "first seed")->capture_default_str();
  fl->add_flag("--same-seed", fluct.same_seed, "reuse base-seed for every run");
  fl->add_option("--band-size", fluct.band, "rank band width for group averages")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_sep_flags(fl, fluct.sep);

  CompareFlags cmp;
  CLI::App* c = app.add_subcommand("compare", "Compare two run records");
  c->add_option("record_a", cmp.a, "first record")->required();
  c->add_option("record_b", cmp.b, "second record")->required();
  c->add_option("--tol", cmp.tol, "max per-entry deviation of W (sign-invariant per row)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c->add_flag("--no-verify", cmp.no_verify, "skip rehashing the referenced datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  int applied = -1;
  if (oica_apply_thread_env(&applied) != OICA_OK) {
    std::fprintf(stderr, "oica: OICA_THREADS: %s\n", oica_last_error());
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (r->parsed()) return cmd_run(run);
    if (s->parsed()) return cmd_sweep(sweep);
    if (fl->parsed()) return cmd_fluct(fluct);
    if (c->parsed()) return cmd_compare(cmp);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "oica: %s\n", e.what());
    return kExitAlgorithm;
  }
  return kExitUsage;
}
