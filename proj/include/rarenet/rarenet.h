#ifndef RARENET_H
#define RARENET_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the bundled CLI. */
typedef enum rn_status {
    RN_OK = 0,
    RN_ERROR_RUNTIME = 1,
    RN_ERROR_CONFIG = 2
} rn_status;

const char* rn_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* rn_last_error(void);

/* Frees strings returned through char** out-parameters. */
void rn_string_free(char* s);

/* A finite point configuration. */
typedef struct rn_points rn_points;

/* A directed adjacency built over a point configuration. */
typedef struct rn_graph rn_graph;

/*
 * config JSON: {"dim": 2, "n": 8.0, "margin": 0.0, "seed": {"root": 7},
 *               "intensity": 1.0}   or "count": 100 for a fixed-size draw.
 * The sampling box is the centered cube of side n + 2*margin.
 */
rn_status rn_points_sample(const char* config_json, rn_points** out);
rn_status rn_points_from_csv(const char* path, rn_points** out);
/* points JSON: [[x_1,...,x_d], ...] */
rn_status rn_points_from_json(const char* points_json, rn_points** out);
rn_status rn_points_write_csv(const rn_points* pts, const char* path,
                              const char* audit_json);
int rn_points_dim(const rn_points* pts);
int64_t rn_points_size(const rn_points* pts);
rn_status rn_points_coord(const rn_points* pts, int64_t index, int axis, double* out);
void rn_points_free(rn_points* pts);

/* model JSON: {"kind": "knn", "dim": 2, "k": 1}
 *          or {"kind": "beta_skeleton", "dim": 2, "beta": 2.0} */
rn_status rn_graph_build(const rn_points* pts, const char* model_json, rn_graph** out);
int64_t rn_graph_node_count(const rn_graph* g);
int64_t rn_graph_arc_count(const rn_graph* g);
rn_status rn_graph_out_degree(const rn_graph* g, int64_t node, int64_t* out);
rn_status rn_graph_write_csv(const rn_graph* g, const char* path, const char* audit_json);
void rn_graph_free(rn_graph* g);

/*
 * One-shot runner used by the CLI. command is one of:
 *   sample, graph, score, mu, tail, condense, rate-opt, rate-curve, check
 * config_json carries that command's parameters (unknown keys rejected);
 * artifacts are written to the paths named inside, each embedding the full
 * config. On success *result_json receives a malloc'd summary; release it
 * with rn_string_free.
 */
rn_status rn_run_command(const char* command, const char* config_json,
                         char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* RARENET_H */
