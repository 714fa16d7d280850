#ifndef MWC_MWC_H
#define MWC_MWC_H

#include <stdint.h>

#if defined(_WIN32)
#define MWC_API __declspec(dllexport)
#else
#define MWC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwc_status {
  MWC_OK = 0,
  MWC_INVALID_ARGUMENT = 1,
  MWC_PARSE = 2,
  MWC_INVARIANT = 3,
  MWC_CONGESTION = 4,
  MWC_ROUND_LIMIT = 5,
  MWC_DISCONNECTED = 6,
  MWC_UNSUPPORTED = 7,
  MWC_INTERNAL = 8,
  MWC_IO = 9
} mwc_status;

typedef struct mwc_graph mwc_graph;
typedef struct mwc_run mwc_run;

MWC_API const char* mwc_version(void);
MWC_API const char* mwc_status_name(mwc_status s);
/* Message of the last failed call on this thread, "" if none. */
MWC_API const char* mwc_last_error(void);

/* Graphs. Vertex ids are 0..n-1, weights >= 0 (1 for unweighted input). */
MWC_API mwc_status mwc_graph_create(int32_t n, int directed, int64_t m, const int32_t* u, const int32_t* v,
                                    const int64_t* w, mwc_graph** out);
MWC_API mwc_status mwc_graph_parse(const char* text, mwc_graph** out);
MWC_API mwc_status mwc_graph_load(const char* path, mwc_graph** out);
MWC_API mwc_status mwc_graph_save(const mwc_graph* g, const char* path);
/* Whitespace-separated key=value spec, e.g. "family=random n=200 avg=3 directed=1 W=8 seed=4".
   Families: random, tree, planted, cycle, path, star, grid, petersen, gadget. */
MWC_API mwc_status mwc_graph_generate(const char* spec, mwc_graph** out);
MWC_API void mwc_graph_free(mwc_graph* g);

MWC_API int32_t mwc_graph_n(const mwc_graph* g);
MWC_API int64_t mwc_graph_m(const mwc_graph* g);
MWC_API int mwc_graph_directed(const mwc_graph* g);
MWC_API int64_t mwc_graph_max_weight(const mwc_graph* g);
MWC_API mwc_status mwc_graph_edge(const mwc_graph* g, int64_t i, int32_t* u, int32_t* v, int64_t* w);
/* Planted cycle of a generated graph. Writes up to cap vertices, returns the full length (0 if none). */
MWC_API int32_t mwc_graph_witness(const mwc_graph* g, int32_t* buf, int32_t cap);
/* Hop diameter of the undirected support. */
MWC_API mwc_status mwc_graph_diameter(const mwc_graph* g, int32_t* D);

/* Exact references. value is +inf when there is no cycle. */
MWC_API mwc_status mwc_oracle_mwc(const mwc_graph* g, double* value, int32_t* cycle, int32_t cap, int32_t* len);
/* Minimum cycle weight among cycles of weight at most h. */
MWC_API mwc_status mwc_oracle_hop_mwc(const mwc_graph* g, int64_t h, double* value);

typedef struct mwc_params {
  uint64_t seed;
  double eps;
  double sample_factor;     /* <= 0 keeps the algorithm default */
  int64_t phase_cap_factor; /* <= 0 keeps the default */
  int64_t cap_override;
  int64_t hop_bound;        /* > 0: hop-limited mode on a weighted host (mwc-dir, girth) */
  int32_t num_sources;      /* sssp: sources spread over the ids when sources is NULL */
  const int32_t* sources;
  int32_t provider;         /* sssp-small-k: 0 exact shortcut hopset, 1 none */
  int32_t witness;
  int32_t verify;           /* compare against the oracle and set the violation flag */
  int32_t tables;           /* sssp: put distance tables into the JSON record */
} mwc_params;

MWC_API void mwc_params_init(mwc_params* p);

/* Algorithms: bfs-exact, sssp-approx, sssp-small-k, mwc-dir, girth, mwc-wt.
   MWC algorithms on a disconnected support run per component. */
MWC_API mwc_status mwc_run_algorithm(const mwc_graph* g, const char* algorithm, const mwc_params* p, mwc_run** out);
/* MWC algorithms: the estimate. SSSP: worst ratio to the oracle when verified, else +inf. */
MWC_API double mwc_run_value(const mwc_run* r);
MWC_API int64_t mwc_run_rounds(const mwc_run* r);
MWC_API uint64_t mwc_run_hash(const mwc_run* r);
MWC_API int64_t mwc_run_max_words(const mwc_run* r);
/* 1 when verification found a broken bound. */
MWC_API int mwc_run_violated(const mwc_run* r);
/* Full record; owned by the run. */
MWC_API const char* mwc_run_json(const mwc_run* r);
MWC_API void mwc_run_free(mwc_run* r);

#ifdef __cplusplus
}
#endif

#endif
