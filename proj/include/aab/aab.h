/* C interface to the AAB edge-screening library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function (which accepts NULL). Every fallible call returns
 * an aab_status; on failure aab_last_error_message() describes the problem
 * for the calling thread. Edge indices follow the lexicographic (i, j) order
 * of the graph's edges.
 */
#ifndef AAB_AAB_H_
#define AAB_AAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(AAB_BUILDING_LIBRARY)
#define AAB_API __attribute__((visibility("default")))
#else
#define AAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aab_status {
  AAB_OK = 0,
  AAB_ERROR_INVALID_ARGUMENT = 1,
  AAB_ERROR_IO = 2,
  AAB_ERROR_PARSE = 3,
  AAB_ERROR_DEGENERATE = 4,
  AAB_ERROR_EMPTY_RESULT = 5,
  AAB_ERROR_INTERNAL = 6
} aab_status;

typedef struct aab_graph aab_graph;
typedef struct aab_ground_truth aab_ground_truth;
typedef struct aab_statistics aab_statistics;
typedef struct aab_labels aab_labels;
typedef struct aab_locations aab_locations;

AAB_API const char* aab_version(void);
AAB_API const char* aab_status_string(aab_status status);
AAB_API const char* aab_last_error_message(void);

/* 0 restores the default (AAB_THREADS, else hardware concurrency). */
AAB_API void aab_set_num_threads(int num_threads);
AAB_API int aab_num_threads(void);

/* ---- geometry -------------------------------------------------------- */

AAB_API aab_status aab_great_circle_distance(const double u[3],
                                             const double v[3], double* out);
/* Geodesic distance from g3 to the consistency arc of (g1, g2).
 * AAB_ERROR_DEGENERATE when g1, g2 are (anti)parallel. */
AAB_API aab_status aab_inconsistency(const double g3[3], const double g1[3],
                                     const double g2[3], double* out);

/* ---- view graphs ----------------------------------------------------- */

/* directions holds 3 * num_edges components; edge e is (i[e], j[e]) with
 * direction γ_ij pointing from j to i. */
AAB_API aab_status aab_graph_create(int num_vertices, size_t num_edges,
                                    const int* i, const int* j,
                                    const double* directions,
                                    aab_graph** out);
AAB_API aab_status aab_graph_read(const char* path, aab_graph** out);
/* comment may be NULL or hold '\n'-separated provenance lines. */
AAB_API aab_status aab_graph_write(const aab_graph* graph, const char* path,
                                   const char* comment);
AAB_API void aab_graph_free(aab_graph* graph);
AAB_API int aab_graph_num_vertices(const aab_graph* graph);
AAB_API size_t aab_graph_num_edges(const aab_graph* graph);
AAB_API aab_status aab_graph_edge(const aab_graph* graph, size_t index,
                                  int* i, int* j, double direction[3]);

/* ---- synthetic data -------------------------------------------------- */

typedef struct aab_uc_params {
  int n;
  double p;
  double q;
  double sigma;
  uint64_t seed;
} aab_uc_params;

AAB_API aab_status aab_generate_uc(const aab_uc_params* params,
                                   aab_graph** graph,
                                   aab_ground_truth** truth);
AAB_API void aab_ground_truth_free(aab_ground_truth* truth);
/* Copies the ground-truth locations into a location set. */
AAB_API aab_status aab_ground_truth_locations(const aab_ground_truth* truth,
                                              aab_locations** out);
AAB_API aab_status aab_label_edges(const aab_graph* graph,
                                   const aab_ground_truth* truth, double sigma,
                                   aab_labels** out);

/* ---- labels ---------------------------------------------------------- */

AAB_API aab_status aab_labels_read(const aab_graph* graph, const char* path,
                                   aab_labels** out);
AAB_API aab_status aab_labels_write(const aab_graph* graph,
                                    const aab_labels* labels, const char* path,
                                    const char* comment);
AAB_API aab_status aab_labels_get(const aab_labels* labels, size_t index,
                                  double* angle, int* corrupted);
AAB_API void aab_labels_free(aab_labels* labels);

/* ---- statistics ------------------------------------------------------ */

typedef enum aab_statistic_kind {
  AAB_STATISTIC_NAIVE = 0,
  AAB_STATISTIC_IR = 1
} aab_statistic_kind;

typedef struct aab_statistics_options {
  aab_statistic_kind kind;
  int samples_per_edge; /* s, default 50 */
  int iterations;       /* T, default 10 */
  uint64_t seed;
  int keep_per_iteration;
} aab_statistics_options;

AAB_API void aab_statistics_options_default(aab_statistics_options* options);
AAB_API aab_status aab_compute_statistics(const aab_graph* graph,
                                          const aab_statistics_options* options,
                                          aab_statistics** out);
AAB_API aab_status aab_statistics_read(const aab_graph* graph,
                                       const char* path, aab_statistics** out);
AAB_API aab_status aab_statistics_write(const aab_graph* graph,
                                        const aab_statistics* stats,
                                        const char* path, const char* comment);
AAB_API aab_status aab_statistics_write_per_iteration(
    const aab_graph* graph, const aab_statistics* stats, const char* path,
    const char* comment);
/* value is NaN and *unsupported is 1 for edges without a triangle. */
AAB_API aab_status aab_statistics_get(const aab_statistics* stats,
                                      size_t index, double* value,
                                      int* unsupported);
AAB_API void aab_statistics_free(aab_statistics* stats);

/* ---- screening ------------------------------------------------------- */

typedef enum aab_screening_mode {
  AAB_SCREEN_KEEP_FRACTION = 0,
  AAB_SCREEN_THRESHOLD = 1
} aab_screening_mode;

typedef struct aab_screening_options {
  aab_screening_mode mode;
  double keep_fraction; /* (0, 1], default 0.5 */
  double threshold;     /* radians */
  int min_degree;       /* default 2 */
  int drop_unsupported;
} aab_screening_options;

AAB_API void aab_screening_options_default(aab_screening_options* options);
/* Edge filtering followed by the solvable-component extraction. */
AAB_API aab_status aab_screen_graph(const aab_graph* graph,
                                    const aab_statistics* stats,
                                    const aab_screening_options* options,
                                    aab_graph** out);

/* ---- location solvers ------------------------------------------------ */

typedef enum aab_solver_kind {
  AAB_SOLVER_LS = 0,
  AAB_SOLVER_IRLS = 1
} aab_solver_kind;

typedef struct aab_solver_options {
  aab_solver_kind kind;
  int max_iters; /* IRLS only, default 100 */
  double delta;  /* IRLS only, default 1e-8 */
} aab_solver_options;

AAB_API void aab_solver_options_default(aab_solver_options* options);
AAB_API aab_status aab_solve(const aab_graph* graph,
                             const aab_solver_options* options,
                             aab_locations** out);

AAB_API aab_status aab_locations_read(const char* path, aab_locations** out);
AAB_API aab_status aab_locations_write(const aab_locations* locations,
                                       const char* path, const char* comment);
AAB_API size_t aab_locations_count(const aab_locations* locations);
AAB_API aab_status aab_locations_get(const aab_locations* locations,
                                     int vertex, double out[3]);
AAB_API void aab_locations_free(aab_locations* locations);

/* ---- evaluation ------------------------------------------------------ */

typedef struct aab_evaluation_options {
  int bins;       /* histogram bins, default 50 */
  double epsilon; /* gap check level, default 0.2 */
  int has_baseline;
  double baseline_error;
  int baseline_is_median;
} aab_evaluation_options;

AAB_API void aab_evaluation_options_default(aab_evaluation_options* options);
/* Writes roc.csv, hist.csv and errors.json into out_dir. estimate and truth
 * may both be NULL. */
AAB_API aab_status aab_evaluate(const aab_graph* graph,
                                const aab_statistics* stats,
                                const aab_labels* labels,
                                const aab_locations* estimate,
                                const aab_locations* truth,
                                const aab_evaluation_options* options,
                                const char* comment, const char* out_dir);
/* *defined is 0 when one class is empty. */
AAB_API aab_status aab_roc_auc(const aab_statistics* stats,
                               const aab_labels* labels, double* auc,
                               int* defined);
/* Similarity-aligns estimate to truth, then reports mean/median distance. */
AAB_API aab_status aab_location_errors(const aab_locations* estimate,
                                       const aab_locations* truth,
                                       double* mean, double* median);
AAB_API aab_status aab_improvement(double error_before, double error_after,
                                   double* percent);

/* ---- verification ---------------------------------------------------- */

typedef enum aab_verify_mode {
  AAB_VERIFY_LEMMA = 0,
  AAB_VERIFY_Z = 1,
  AAB_VERIFY_FORMULA = 2
} aab_verify_mode;

/* Runs the Monte Carlo / oracle checks and writes a JSON report to path. */
AAB_API aab_status aab_verify(aab_verify_mode mode, int64_t samples,
                              uint64_t seed, int oracle_steps,
                              const char* path);

#ifdef __cplusplus
}
#endif

#endif /* AAB_AAB_H_ */
