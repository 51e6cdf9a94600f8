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

#include "oica/oica.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "oica/oica.hpp"

struct oica_matrix {
  oica::RealMatrix m;
};

struct oica_whitening {
  oica::WhiteningModel model;
  oica_matrix whiten;
};

struct oica_dataset {
  oica_matrix observed;
  std::optional<oica_matrix> mixing;
  std::optional<oica_matrix> sources;
  std::optional<std::vector<double>> kurtoses;
  oica::SourceSpec spec;

  oica::Dataset view() const {
    oica::Dataset ds;
    ds.observed = observed.m;
    if (mixing) ds.mixing = mixing->m;
    if (sources) ds.sources = sources->m;
    ds.true_kurtoses = kurtoses;
    return ds;
  }
};

struct oica_result {
  oica::SeparationResult res;
  oica_matrix w;
};

struct oica_record {
  oica::RunRecord rec;
  oica_result result;
};

struct oica_fluctuation {
  oica::FluctuationReport report;
};

namespace {

thread_local std::string g_last_error;

oica_status to_status(oica::ErrorCode code) {
  using oica::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return OICA_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return OICA_ERR_DIMENSION_MISMATCH;
    case ErrorCode::RankDeficient: return OICA_ERR_RANK_DEFICIENT;
    case ErrorCode::DomainError: return OICA_ERR_DOMAIN;
    case ErrorCode::DegenerateCandidate: return OICA_ERR_DEGENERATE_CANDIDATE;
    case ErrorCode::DegenerateRow: return OICA_ERR_DEGENERATE_ROW;
    case ErrorCode::AllCandidatesDegenerate: return OICA_ERR_ALL_CANDIDATES_DEGENERATE;
    case ErrorCode::NoCandidates: return OICA_ERR_NO_CANDIDATES;
    case ErrorCode::IllConditionedComplement: return OICA_ERR_ILL_CONDITIONED_COMPLEMENT;
    case ErrorCode::MixingGenerationFailed: return OICA_ERR_MIXING_GENERATION_FAILED;
    case ErrorCode::FormatError: return OICA_ERR_FORMAT;
    case ErrorCode::ChecksumMismatch: return OICA_ERR_CHECKSUM_MISMATCH;
    case ErrorCode::IoError: return OICA_ERR_IO;
    case ErrorCode::ZeroVector: return OICA_ERR_ZERO_VECTOR;
    case ErrorCode::DatasetMismatch: return OICA_ERR_DATASET_MISMATCH;
  }
  return OICA_ERR_INTERNAL;
}

oica_status fail(oica_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
oica_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return OICA_OK;
  } catch (const oica::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OICA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OICA_ERR_INTERNAL, e.what());
  }
}

#define OICA_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) throw oica::Error(oica::ErrorCode::InvalidArgument, msg); \
  } while (0)

oica::MatrixFormat to_format(oica_format f) {
  switch (f) {
    case OICA_FORMAT_TEXT: return oica::MatrixFormat::Text;
    case OICA_FORMAT_BINARY: return oica::MatrixFormat::Binary;
    case OICA_FORMAT_AUTO: return oica::MatrixFormat::Auto;
  }
  throw oica::Error(oica::ErrorCode::InvalidArgument, "unknown matrix format");
}

oica::SeparationOptions to_options(const oica_options& o) {
  oica::SeparationOptions out;
  out.candidates = o.candidates;
  out.max_iterations = o.max_iterations;
  out.tolerance = o.tolerance;
  out.seed = o.seed;
  out.strict_paper = o.strict_paper != 0;
  out.reference_init = o.full_space_init ? oica::ReferenceInit::FullSpace
                                         : oica::ReferenceInit::MatchedComplement;
  out.complement_floor = o.complement_floor;
  out.gaussianity_test = o.skip_gaussianity_test == 0;
  return out;
}

oica_options from_options(const oica::SeparationOptions& o) {
  oica_options out{};
  out.candidates = o.candidates;
  out.max_iterations = o.max_iterations;
  out.tolerance = o.tolerance;
  out.seed = o.seed;
  out.strict_paper = o.strict_paper ? 1 : 0;
  out.full_space_init = o.reference_init == oica::ReferenceInit::FullSpace ? 1 : 0;
  out.complement_floor = o.complement_floor;
  out.skip_gaussianity_test = o.gaussianity_test ? 0 : 1;
  return out;
}

oica_dataset* make_dataset(oica::Dataset ds, oica::SourceSpec spec) {
  auto out = std::make_unique<oica_dataset>();
  out->observed.m = std::move(ds.observed);
  if (ds.mixing) out->mixing = oica_matrix{std::move(*ds.mixing)};
  if (ds.sources) out->sources = oica_matrix{std::move(*ds.sources)};
  out->kurtoses = std::move(ds.true_kurtoses);
  out->spec = std::move(spec);
  return out.release();
}

std::size_t copy_out(const std::vector<double>& src, double* out, std::size_t capacity) {
  if (out != nullptr) std::copy_n(src.begin(), std::min(capacity, src.size()), out);
  return src.size();
}

}  // namespace

extern "C" {

const char* oica_status_name(oica_status status) {
  switch (status) {
    case OICA_OK: return "Ok";
    case OICA_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case OICA_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case OICA_ERR_RANK_DEFICIENT: return "RankDeficient";
    case OICA_ERR_DOMAIN: return "DomainError";
    case OICA_ERR_DEGENERATE_CANDIDATE: return "DegenerateCandidate";
    case OICA_ERR_DEGENERATE_ROW: return "DegenerateRow";
    case OICA_ERR_ALL_CANDIDATES_DEGENERATE: return "AllCandidatesDegenerate";
    case OICA_ERR_NO_CANDIDATES: return "NoCandidates";
    case OICA_ERR_ILL_CONDITIONED_COMPLEMENT: return "IllConditionedComplement";
    case OICA_ERR_MIXING_GENERATION_FAILED: return "MixingGenerationFailed";
    case OICA_ERR_FORMAT: return "FormatError";
    case OICA_ERR_CHECKSUM_MISMATCH: return "ChecksumMismatch";
    case OICA_ERR_IO: return "IoError";
    case OICA_ERR_ZERO_VECTOR: return "ZeroVector";
    case OICA_ERR_DATASET_MISMATCH: return "DatasetMismatch";
    case OICA_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* oica_last_error(void) { return g_last_error.c_str(); }

const char* oica_version(void) { return "1.0.0"; }

oica_status oica_set_threads(int threads) {
  return guarded([&] { oica::set_thread_limit(threads); });
}

oica_status oica_apply_thread_env(int* applied) {
  return guarded([&] {
    const int v = oica::apply_thread_limit_from_env();
    if (applied) *applied = v;
  });
}

// ---- matrices ----

oica_status oica_matrix_create(size_t rows, size_t cols, const double* data, oica_matrix** out) {
  return guarded([&] {
    OICA_REQUIRE(out != nullptr, "out must not be NULL");
    OICA_REQUIRE(cols >= 1, "matrix needs at least one column");
    auto m = std::make_unique<oica_matrix>();
    m->m = oica::RealMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (data != nullptr) {
      std::copy_n(data, rows * cols, m->m.data());
      OICA_REQUIRE(m->m.allFinite(), "matrix data must be finite");
    }
    *out = m.release();
  });
}

void oica_matrix_free(oica_matrix* m) { delete m; }
size_t oica_matrix_rows(const oica_matrix* m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }
size_t oica_matrix_cols(const oica_matrix* m) { return m ? static_cast<size_t>(m->m.cols()) : 0; }
const double* oica_matrix_data(const oica_matrix* m) { return m ? m->m.data() : nullptr; }

oica_status oica_matrix_read(const char* path, oica_format format, oica_matrix** out) {
  return guarded([&] {
    OICA_REQUIRE(path != nullptr && out != nullptr, "path and out must not be NULL");
    auto m = std::make_unique<oica_matrix>();
    m->m = oica::read_matrix(path, to_format(format));
    *out = m.release();
  });
}

oica_status oica_matrix_write(const oica_matrix* m, const char* path, oica_format format) {
  return guarded([&] {
    OICA_REQUIRE(m != nullptr && path != nullptr, "matrix and path must not be NULL");
    oica::write_matrix(path, m->m, to_format(format));
  });
}

uint64_t oica_matrix_hash(const oica_matrix* m) { return m ? oica::content_hash(m->m) : 0; }

// ---- preprocessing ----

oica_status oica_center_whiten(const oica_matrix* x, double eig_floor, oica_matrix** whitened,
                               oica_whitening** model) {
  return guarded([&] {
    OICA_REQUIRE(x != nullptr, "input matrix must not be NULL");
    oica::Whitened w = oica::center_and_whiten(x->m, eig_floor);
    if (whitened) *whitened = new oica_matrix{std::move(w.data)};
    if (model) {
      auto h = std::make_unique<oica_whitening>();
      h->whiten.m = w.model.whiten;
      h->model = std::move(w.model);
      *model = h.release();
    }
  });
}

void oica_whitening_free(oica_whitening* model) { delete model; }

const oica_matrix* oica_whitening_matrix(const oica_whitening* model) {
  return model ? &model->whiten : nullptr;
}

oica_status oica_compose_unmixing(const oica_matrix* w_white, const oica_whitening* model,
                                  oica_matrix** out) {
  return guarded([&] {
    OICA_REQUIRE(w_white && model && out, "arguments must not be NULL");
    *out = new oica_matrix{oica::compose_unmixing(w_white->m, model->model)};
  });
}

// ---- contrast ----

double oica_kurtosis_alpha(const double* y, size_t m) {
  if (y == nullptr || m == 0) return std::numeric_limits<double>::quiet_NaN();
  return oica::kurtosis_alpha({y, m}).alpha;
}

oica_status oica_upsilon(double alpha, double* out) {
  return guarded([&] {
    OICA_REQUIRE(out != nullptr, "out must not be NULL");
    *out = oica::upsilon(alpha);
  });
}

double oica_gaussianity_threshold(size_t n, size_t i_one_based, size_t m) {
  try {
    return oica::gaussianity_threshold(n, i_one_based, m);
  } catch (const oica::Error& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// ---- synthetic data ----

double oica_gg_beta(double rho) {
  try {
    return oica::gg_beta(rho);
  } catch (const oica::Error& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double oica_gg_kurtosis(double rho) {
  try {
    return oica::gg_kurtosis(rho);
  } catch (const oica::Error& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

size_t oica_paper_rho_grid(double* out, size_t capacity) {
  return copy_out(oica::paper_rho_grid(), out, capacity);
}

oica_status oica_dataset_generate(const oica_source_spec* spec, oica_dataset** out) {
  return guarded([&] {
    OICA_REQUIRE(spec != nullptr && out != nullptr, "spec and out must not be NULL");
    OICA_REQUIRE(spec->rho_count == 0 || spec->rhos != nullptr, "rhos must not be NULL");
    oica::SourceSpec s;
    s.rhos.assign(spec->rhos, spec->rhos + spec->rho_count);
    s.gaussian_count = spec->gaussian_count;
    s.samples = spec->samples;
    s.seed = spec->seed;
    s.identity_mixing = spec->identity_mixing != 0;
    oica::Dataset ds = oica::gen_dataset(s);
    *out = make_dataset(std::move(ds), std::move(s));
  });
}

oica_status oica_dataset_read(const char* dir, oica_dataset** out) {
  return guarded([&] {
    OICA_REQUIRE(dir != nullptr && out != nullptr, "dir and out must not be NULL");
    oica::DatasetBundle b = oica::read_dataset(dir);
    *out = make_dataset(std::move(b.dataset), std::move(b.spec));
  });
}

oica_status oica_dataset_write(const oica_dataset* ds, const char* dir, oica_format format) {
  return guarded([&] {
    OICA_REQUIRE(ds != nullptr && dir != nullptr, "dataset and dir must not be NULL");
    oica::write_dataset(dir, ds->view(), ds->spec, to_format(format));
  });
}

void oica_dataset_free(oica_dataset* ds) { delete ds; }

const oica_matrix* oica_dataset_observed(const oica_dataset* ds) {
  return ds ? &ds->observed : nullptr;
}
const oica_matrix* oica_dataset_mixing(const oica_dataset* ds) {
  return ds && ds->mixing ? &*ds->mixing : nullptr;
}
const oica_matrix* oica_dataset_sources(const oica_dataset* ds) {
  return ds && ds->sources ? &*ds->sources : nullptr;
}

size_t oica_dataset_kurtoses(const oica_dataset* ds, double* out, size_t capacity) {
  if (ds == nullptr || !ds->kurtoses) return 0;
  return copy_out(*ds->kurtoses, out, capacity);
}

size_t oica_dataset_rhos(const oica_dataset* ds, double* out, size_t capacity) {
  return ds ? copy_out(ds->spec.rhos, out, capacity) : 0;
}

size_t oica_dataset_gaussian_count(const oica_dataset* ds) {
  return ds ? ds->spec.gaussian_count : 0;
}

uint64_t oica_dataset_seed(const oica_dataset* ds) { return ds ? ds->spec.seed : 0; }

oica_status oica_dataset_ground_truth_order(const oica_dataset* ds, size_t* out, size_t capacity) {
  return guarded([&] {
    OICA_REQUIRE(ds != nullptr && out != nullptr, "dataset and out must not be NULL");
    OICA_REQUIRE(ds->kurtoses.has_value(), "dataset carries no true kurtoses");
    const auto order = oica::ground_truth_order(*ds->kurtoses);
    OICA_REQUIRE(capacity >= order.size(), "output buffer too small");
    std::copy(order.begin(), order.end(), out);
  });
}

oica_status oica_dataset_sorted_mixing(const oica_dataset* ds, oica_matrix** out) {
  return guarded([&] {
    OICA_REQUIRE(ds != nullptr && out != nullptr, "dataset and out must not be NULL");
    OICA_REQUIRE(ds->mixing.has_value() && ds->kurtoses.has_value(),
                 "dataset carries no mixing matrix or kurtoses");
    *out = new oica_matrix{oica::sorted_mixing(ds->mixing->m, *ds->kurtoses)};
  });
}

// ---- separation ----

oica_options oica_options_default(void) { return from_options(oica::SeparationOptions{}); }

oica_status oica_separate(oica_algorithm algorithm, const oica_matrix* whitened,
                          const oica_options* options, oica_result** out) {
  return guarded([&] {
    OICA_REQUIRE(whitened != nullptr && out != nullptr, "whitened and out must not be NULL");
    OICA_REQUIRE(algorithm == OICA_ALGORITHM_FAST || algorithm == OICA_ALGORITHM_REFERENCE,
                 "unknown algorithm");
    const oica_options opts = options ? *options : oica_options_default();
    auto r = std::make_unique<oica_result>();
    r->res = oica::separate(
        algorithm == OICA_ALGORITHM_FAST ? oica::Algorithm::Fast : oica::Algorithm::Reference,
        whitened->m, to_options(opts));
    r->w.m = r->res.w;
    *out = r.release();
  });
}

void oica_result_free(oica_result* r) { delete r; }
const oica_matrix* oica_result_w(const oica_result* r) { return r ? &r->w : nullptr; }
size_t oica_result_extracted(const oica_result* r) { return r ? r->res.extracted() : 0; }
size_t oica_result_attempted(const oica_result* r) { return r ? r->res.components.size() : 0; }
size_t oica_result_stop_index(const oica_result* r) { return r ? r->res.stop_index : 0; }
double oica_result_stop_upsilon(const oica_result* r) {
  return r ? r->res.stop_upsilon : std::numeric_limits<double>::quiet_NaN();
}
double oica_result_total_seconds(const oica_result* r) { return r ? r->res.total_seconds : 0.0; }

oica_status oica_result_component(const oica_result* r, size_t k, oica_component_info* out) {
  return guarded([&] {
    OICA_REQUIRE(r != nullptr && out != nullptr, "result and out must not be NULL");
    OICA_REQUIRE(k < r->res.components.size(), "component index out of range");
    const oica::ComponentDiagnostics& d = r->res.components[k];
    out->iterations = d.iterations;
    out->converged = d.converged;
    out->unconverged = d.unconverged;
    out->degenerate = d.degenerate;
    out->winner = d.winner;
    out->winner_converged = d.winner_converged ? 1 : 0;
    out->upsilon = d.upsilon;
    out->seconds = d.seconds;
  });
}

// ---- metrics ----

oica_status oica_ordering_error(const oica_matrix* w, const oica_matrix* a, double tau,
                                double* out) {
  return guarded([&] {
    OICA_REQUIRE(w && a && out, "arguments must not be NULL");
    *out = oica::ordering_error(w->m, a->m, tau);
  });
}

oica_status oica_cosine_divergence(const double* u, const double* v, size_t n, double* out) {
  return guarded([&] {
    OICA_REQUIRE(u && v && out, "arguments must not be NULL");
    *out = oica::cosine_divergence({u, n}, {v, n});
  });
}

oica_status oica_fluctuation_compute(const oica_matrix* const* runs, size_t count,
                                     size_t band_size, oica_fluctuation** out) {
  return guarded([&] {
    OICA_REQUIRE(runs != nullptr && out != nullptr, "runs and out must not be NULL");
    std::vector<oica::RealMatrix> mats;
    mats.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      OICA_REQUIRE(runs[k] != nullptr, "run matrix must not be NULL");
      mats.push_back(runs[k]->m);
    }
    auto f = std::make_unique<oica_fluctuation>();
    f->report = oica::fluctuation(mats, band_size);
    *out = f.release();
  });
}

void oica_fluctuation_free(oica_fluctuation* f) { delete f; }

size_t oica_fluctuation_components(const oica_fluctuation* f) {
  return f ? f->report.per_component.size() : 0;
}

double oica_fluctuation_value(const oica_fluctuation* f, size_t i) {
  if (f == nullptr || i >= f->report.per_component.size())
    return std::numeric_limits<double>::quiet_NaN();
  return f->report.per_component[i];
}

size_t oica_fluctuation_group_count(const oica_fluctuation* f) {
  return f ? f->report.groups.size() : 0;
}

oica_status oica_fluctuation_group(const oica_fluctuation* f, size_t k, const char** name,
                                   size_t* first, size_t* last, double* mean) {
  return guarded([&] {
    OICA_REQUIRE(f != nullptr && k < f->report.groups.size(), "group index out of range");
    const oica::FluctuationGroup& g = f->report.groups[k];
    if (name) *name = g.name.c_str();
    if (first) *first = g.first;
    if (last) *last = g.last;
    if (mean) *mean = g.mean;
  });
}

// ---- run records ----

oica_status oica_record_create(oica_algorithm algorithm, const oica_options* options,
                               const char* dataset_path, const char* dataset_hash,
                               const oica_result* result, const oica_matrix* unmixing,
                               oica_record** out) {
  return guarded([&] {
    OICA_REQUIRE(options && dataset_path && dataset_hash && result && out,
                 "arguments must not be NULL");
    auto rec = std::make_unique<oica_record>();
    rec->rec.algorithm =
        algorithm == OICA_ALGORITHM_FAST ? oica::Algorithm::Fast : oica::Algorithm::Reference;
    rec->rec.options = to_options(*options);
    rec->rec.dataset_path = dataset_path;
    rec->rec.dataset_hash = dataset_hash;
    rec->rec.result = result->res;
    rec->rec.unmixing = unmixing ? unmixing->m : result->res.w;
    rec->result.res = rec->rec.result;
    rec->result.w.m = rec->rec.result.w;
    *out = rec.release();
  });
}

oica_status oica_record_write(const oica_record* rec, const char* dir, oica_format format) {
  return guarded([&] {
    OICA_REQUIRE(rec != nullptr && dir != nullptr, "record and dir must not be NULL");
    oica::write_run_record(dir, rec->rec, to_format(format));
  });
}

oica_status oica_record_read(const char* dir, int verify_dataset, oica_record** out) {
  return guarded([&] {
    OICA_REQUIRE(dir != nullptr && out != nullptr, "dir and out must not be NULL");
    auto rec = std::make_unique<oica_record>();
    rec->rec = oica::read_run_record(dir, verify_dataset != 0);
    rec->result.res = rec->rec.result;
    rec->result.w.m = rec->rec.result.w;
    *out = rec.release();
  });
}

void oica_record_free(oica_record* rec) { delete rec; }
const oica_result* oica_record_result(const oica_record* rec) {
  return rec ? &rec->result : nullptr;
}
oica_algorithm oica_record_algorithm(const oica_record* rec) {
  return rec && rec->rec.algorithm == oica::Algorithm::Reference ? OICA_ALGORITHM_REFERENCE
                                                                 : OICA_ALGORITHM_FAST;
}
oica_options oica_record_options(const oica_record* rec) {
  return rec ? from_options(rec->rec.options) : oica_options_default();
}
const char* oica_record_dataset_path(const oica_record* rec) {
  return rec ? rec->rec.dataset_path.c_str() : "";
}
const char* oica_record_dataset_hash(const oica_record* rec) {
  return rec ? rec->rec.dataset_hash.c_str() : "";
}

oica_status oica_record_compare(const oica_record* a, const oica_record* b, double tol,
                                oica_comparison* out) {
  return guarded([&] {
    OICA_REQUIRE(a && b && out, "arguments must not be NULL");
    const oica::RecordComparison c = oica::compare_records(a->rec, b->rec, tol);
    out->max_w_deviation = c.max_w_deviation;
    out->max_upsilon_delta = c.max_upsilon_delta;
    out->speed_ratio = c.speed_ratio;
    out->same_stop_index = c.same_stop_index ? 1 : 0;
    out->match = c.match ? 1 : 0;
  });
}

}  // extern "C"
