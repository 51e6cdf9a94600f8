/* Copyright 2026 The oica Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to liboica: ordering ICA (fast batched and reference
 * deflation forms), synthetic generalized-Gaussian benchmarks, metrics and
 * persistence.
 *
 * Conventions:
 *  - Every function returning oica_status reports failure through the
 *    status; oica_last_error() then holds a message for the calling thread.
 *  - Objects are opaque handles. Handles obtained from *_create, *_read,
 *    *_generate, oica_separate and similar are owned by the caller and
 *    released with the matching *_free. Handles returned by accessors
 *    ("borrowed") live as long as their parent.
 *  - Matrices are row-major; rows are components, columns are samples.
 *  - Indices are 0-based unless stated otherwise.
 */

#ifndef OICA_OICA_H
#define OICA_OICA_H

#include <stddef.h>
#include <stdint.h>

#if defined(OICA_BUILDING_LIBRARY)
#define OICA_API __attribute__((visibility("default")))
#else
#define OICA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oica_status {
  OICA_OK = 0,
  OICA_ERR_INVALID_ARGUMENT = 1,
  OICA_ERR_DIMENSION_MISMATCH = 2,
  OICA_ERR_RANK_DEFICIENT = 3,
  OICA_ERR_DOMAIN = 4,
  OICA_ERR_DEGENERATE_CANDIDATE = 5,
  OICA_ERR_DEGENERATE_ROW = 6,
  OICA_ERR_ALL_CANDIDATES_DEGENERATE = 7,
  OICA_ERR_NO_CANDIDATES = 8,
  OICA_ERR_ILL_CONDITIONED_COMPLEMENT = 9,
  OICA_ERR_MIXING_GENERATION_FAILED = 10,
  OICA_ERR_FORMAT = 11,
  OICA_ERR_CHECKSUM_MISMATCH = 12,
  OICA_ERR_IO = 13,
  OICA_ERR_ZERO_VECTOR = 14,
  OICA_ERR_DATASET_MISMATCH = 15,
  OICA_ERR_INTERNAL = 99
} oica_status;

typedef enum oica_algorithm { OICA_ALGORITHM_FAST = 0, OICA_ALGORITHM_REFERENCE = 1 } oica_algorithm;

typedef enum oica_format {
  OICA_FORMAT_AUTO = 0,
  OICA_FORMAT_TEXT = 1,
  OICA_FORMAT_BINARY = 2
} oica_format;

typedef struct oica_matrix oica_matrix;
typedef struct oica_dataset oica_dataset;
typedef struct oica_whitening oica_whitening;
typedef struct oica_result oica_result;
typedef struct oica_record oica_record;
typedef struct oica_fluctuation oica_fluctuation;

/* Name of a status code, e.g. "RankDeficient". */
OICA_API const char* oica_status_name(oica_status status);
/* Message describing the last failure on this thread ("" if none). */
OICA_API const char* oica_last_error(void);
OICA_API const char* oica_version(void);

/* Caps threads used by internal matrix products; 0 = library default. */
OICA_API oica_status oica_set_threads(int threads);
/* Applies OICA_THREADS from the environment. *applied = -1 when unset. */
OICA_API oica_status oica_apply_thread_env(int* applied);

/* ---- matrices ---- */

/* data may be NULL for a zero-filled matrix. rows may be 0. */
OICA_API oica_status oica_matrix_create(size_t rows, size_t cols, const double* data,
                                        oica_matrix** out);
OICA_API void oica_matrix_free(oica_matrix* m);
OICA_API size_t oica_matrix_rows(const oica_matrix* m);
OICA_API size_t oica_matrix_cols(const oica_matrix* m);
/* Row-major view of rows*cols doubles, valid until the handle is freed. */
OICA_API const double* oica_matrix_data(const oica_matrix* m);
OICA_API oica_status oica_matrix_read(const char* path, oica_format format, oica_matrix** out);
OICA_API oica_status oica_matrix_write(const oica_matrix* m, const char* path, oica_format format);
/* 64-bit FNV-1a of the little-endian payload. */
OICA_API uint64_t oica_matrix_hash(const oica_matrix* m);

/* ---- preprocessing ---- */

/* Centers and whitens x. Either output pointer may be NULL. */
OICA_API oica_status oica_center_whiten(const oica_matrix* x, double eig_floor,
                                        oica_matrix** whitened, oica_whitening** model);
OICA_API void oica_whitening_free(oica_whitening* model);
OICA_API const oica_matrix* oica_whitening_matrix(const oica_whitening* model);
/* w_white * whiten: separating matrix in raw-signal coordinates. */
OICA_API oica_status oica_compose_unmixing(const oica_matrix* w_white, const oica_whitening* model,
                                           oica_matrix** out);

/* ---- contrast ---- */

OICA_API double oica_kurtosis_alpha(const double* y, size_t m);
OICA_API oica_status oica_upsilon(double alpha, double* out);
OICA_API double oica_gaussianity_threshold(size_t n, size_t i_one_based, size_t m);

/* ---- synthetic data ---- */

typedef struct oica_source_spec {
  const double* rhos;
  size_t rho_count;
  size_t gaussian_count;
  size_t samples;
  uint64_t seed;
  int identity_mixing; /* test hook: A = I */
} oica_source_spec;

OICA_API double oica_gg_beta(double rho);
OICA_API double oica_gg_kurtosis(double rho);
/* Writes the 20 grid values to out (capacity must be >= 20). Returns 20. */
OICA_API size_t oica_paper_rho_grid(double* out, size_t capacity);

OICA_API oica_status oica_dataset_generate(const oica_source_spec* spec, oica_dataset** out);
OICA_API oica_status oica_dataset_read(const char* dir, oica_dataset** out);
OICA_API oica_status oica_dataset_write(const oica_dataset* ds, const char* dir, oica_format format);
OICA_API void oica_dataset_free(oica_dataset* ds);
/* Borrowed; mixing and sources return NULL when absent. */
OICA_API const oica_matrix* oica_dataset_observed(const oica_dataset* ds);
OICA_API const oica_matrix* oica_dataset_mixing(const oica_dataset* ds);
OICA_API const oica_matrix* oica_dataset_sources(const oica_dataset* ds);
/* Number of stored true kurtoses (0 when unknown); copies up to capacity. */
OICA_API size_t oica_dataset_kurtoses(const oica_dataset* ds, double* out, size_t capacity);
/* Shape parameters of the generalized-Gaussian rows; copies up to capacity. */
OICA_API size_t oica_dataset_rhos(const oica_dataset* ds, double* out, size_t capacity);
OICA_API size_t oica_dataset_gaussian_count(const oica_dataset* ds);
OICA_API uint64_t oica_dataset_seed(const oica_dataset* ds);
/* Source indices in ground-truth order (contrast of true kurtosis,
 * descending). Requires kurtoses. */
OICA_API oica_status oica_dataset_ground_truth_order(const oica_dataset* ds, size_t* out,
                                                     size_t capacity);
/* Mixing matrix with its columns permuted into ground-truth order. */
OICA_API oica_status oica_dataset_sorted_mixing(const oica_dataset* ds, oica_matrix** out);

/* ---- separation ---- */

typedef struct oica_options {
  size_t candidates;     /* L */
  size_t max_iterations; /* K */
  double tolerance;      /* eps */
  uint64_t seed;
  int strict_paper;       /* fast: drop candidates unconverged after K */
  int full_space_init;    /* reference: draw w0 in R^N instead of matched */
  double complement_floor;
  int skip_gaussianity_test; /* extract all N components */
} oica_options;

/* L = 100, K = 30, eps = 1e-6, seed 0, matched initialization. */
OICA_API oica_options oica_options_default(void);

OICA_API oica_status oica_separate(oica_algorithm algorithm, const oica_matrix* whitened,
                                   const oica_options* options, oica_result** out);
OICA_API void oica_result_free(oica_result* r);
/* Accepted rows in whitened coordinates (may have zero rows). Borrowed. */
OICA_API const oica_matrix* oica_result_w(const oica_result* r);
OICA_API size_t oica_result_extracted(const oica_result* r);
/* Components attempted, including the one that failed the Gaussianity test. */
OICA_API size_t oica_result_attempted(const oica_result* r);
/* 1-based index where the Gaussianity test fired, or N + 1. */
OICA_API size_t oica_result_stop_index(const oica_result* r);
OICA_API double oica_result_stop_upsilon(const oica_result* r);
OICA_API double oica_result_total_seconds(const oica_result* r);

typedef struct oica_component_info {
  size_t iterations;
  size_t converged;
  size_t unconverged;
  size_t degenerate;
  size_t winner;
  int winner_converged;
  double upsilon;
  double seconds;
} oica_component_info;

/* k < oica_result_attempted(r). */
OICA_API oica_status oica_result_component(const oica_result* r, size_t k,
                                           oica_component_info* out);

/* ---- metrics ---- */

OICA_API oica_status oica_ordering_error(const oica_matrix* w, const oica_matrix* a, double tau,
                                         double* out);
OICA_API oica_status oica_cosine_divergence(const double* u, const double* v, size_t n,
                                            double* out);
OICA_API oica_status oica_fluctuation_compute(const oica_matrix* const* runs, size_t count,
                                              size_t band_size, oica_fluctuation** out);
OICA_API void oica_fluctuation_free(oica_fluctuation* f);
OICA_API size_t oica_fluctuation_components(const oica_fluctuation* f);
OICA_API double oica_fluctuation_value(const oica_fluctuation* f, size_t i);
OICA_API size_t oica_fluctuation_group_count(const oica_fluctuation* f);
/* Group k: name ("all", "top", "mid", "rest"), rank range [first, last). */
OICA_API oica_status oica_fluctuation_group(const oica_fluctuation* f, size_t k, const char** name,
                                            size_t* first, size_t* last, double* mean);

/* ---- run records ---- */

/* Bundles a result with its provenance. unmixing may be NULL. */
OICA_API oica_status oica_record_create(oica_algorithm algorithm, const oica_options* options,
                                        const char* dataset_path, const char* dataset_hash,
                                        const oica_result* result, const oica_matrix* unmixing,
                                        oica_record** out);
OICA_API oica_status oica_record_write(const oica_record* rec, const char* dir, oica_format format);
/* verify_dataset != 0 rehashes the referenced X.mat. */
OICA_API oica_status oica_record_read(const char* dir, int verify_dataset, oica_record** out);
OICA_API void oica_record_free(oica_record* rec);
/* Borrowed view of the stored result. */
OICA_API const oica_result* oica_record_result(const oica_record* rec);
OICA_API oica_algorithm oica_record_algorithm(const oica_record* rec);
OICA_API oica_options oica_record_options(const oica_record* rec);
OICA_API const char* oica_record_dataset_path(const oica_record* rec);
OICA_API const char* oica_record_dataset_hash(const oica_record* rec);

typedef struct oica_comparison {
  double max_w_deviation;
  double max_upsilon_delta;
  double speed_ratio;
  int same_stop_index;
  int match;
} oica_comparison;

OICA_API oica_status oica_record_compare(const oica_record* a, const oica_record* b, double tol,
                                         oica_comparison* out);

#ifdef __cplusplus
}
#endif

#endif /* OICA_OICA_H */
