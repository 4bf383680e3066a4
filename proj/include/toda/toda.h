/* C interface to the Toda flow laboratory.
 *
 * Usage: build a lab from a JSON config string, ask it for documents,
 * read them out as JSON (and CSV where a command produces one), destroy
 * both. All functions are synchronous. Handles are not thread safe;
 * distinct handles may be used from distinct threads.
 */
#ifndef TODA_TODA_H
#define TODA_TODA_H

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the CLI exit codes. */
typedef enum toda_status {
  TODA_OK = 0,
  TODA_CONFIG_ERROR = 2,
  TODA_NUMERICAL_ERROR = 3,
  TODA_INVARIANT_ERROR = 4
} toda_status;

typedef struct toda_lab toda_lab;
typedef struct toda_doc toda_doc;

const char* toda_version(void);

/* Message from the most recent failing call on this thread, or "" if the
 * most recent call succeeded. The pointer stays valid until the next call
 * on the same thread. */
const char* toda_last_error(void);

/* config_json is a JSON object; unknown keys are rejected. Keys:
 *   type (string, "A"|"B"), rank (int), lambda (array of doubles),
 *   n (array of doubles), seed (uint), t_max (double),
 *   order ("strong"|"weak-left"|"weak-right"), shots_per_node (int),
 *   max_pairs_per_gap (int), abs_tol (double), rel_tol (double).
 * Omitted keys take defaults; pass "{}" for the stock A2 setup.
 * On success *out owns the lab and must be released with toda_lab_destroy.
 */
toda_status toda_lab_create(const char* config_json, toda_lab** out);
void toda_lab_destroy(toda_lab* lab);

/* Each call produces a fresh document the caller must destroy.
 * On failure *out is set to NULL and toda_last_error() explains. */
toda_status toda_lab_roots(toda_lab* lab, toda_doc** out);
toda_status toda_lab_weyl(toda_lab* lab, toda_doc** out);

/* kind: "strong", "weak-left" or "weak-right"; NULL means the configured
 * order. */
toda_status toda_lab_bruhat(toda_lab* lab, const char* kind, toda_doc** out);

/* kind: "lax" or "group". The document carries both a CSV table of the
 * sampled trajectory and a JSON diagnostic block. */
toda_status toda_lab_flow(toda_lab* lab, const char* kind, toda_doc** out);

toda_status toda_lab_curve_check(toda_lab* lab, toda_doc** out);
toda_status toda_lab_linearize(toda_lab* lab, toda_doc** out);

/* These two still populate *out when the run falsifies the claimed
 * correspondence between trajectories and the strong order, so the caller
 * can inspect the evidence; the return value is TODA_INVARIANT_ERROR in
 * that case. */
toda_status toda_lab_connectivity(toda_lab* lab, toda_doc** out);
toda_status toda_lab_verify(toda_lab* lab, toda_doc** out);

/* Owned by the document; valid until toda_doc_destroy. */
const char* toda_doc_json(const toda_doc* doc);

/* NULL when the command has no tabular output. */
const char* toda_doc_csv(const toda_doc* doc);

void toda_doc_destroy(toda_doc* doc);

#ifdef __cplusplus
}
#endif

#endif /* TODA_TODA_H */
