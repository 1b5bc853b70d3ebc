/* C interface to the orbital-integral library.
 *
 * The library is driven through JSON: create a context from a config
 * document, then run commands against it. Every returned string is a
 * malloc'd JSON document that the caller frees with orbital_free().
 *
 * Commands (see the README for payload schemas):
 *   "orb"        symmetric/unitary orbital integrals for one element
 *   "verify-fl"  fundamental-lemma verification scan
 *   "bt-graph"   vertex-lattice graph and dagger components
 *   "rz-dim"     dimension formula evaluation
 *   "selftest"   condensed internal checks
 */
#ifndef ORBITAL_C_H
#define ORBITAL_C_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct orbital_ctx orbital_ctx;

/* error codes; nonzero results leave a message in orbital_last_error */
enum {
  ORBITAL_OK = 0,
  ORBITAL_E_MISMATCH = 2,   /* a theorem-case comparison failed */
  ORBITAL_E_SATURATION = 3, /* support sums failed to stabilize */
  ORBITAL_E_CONFIG = 4,     /* malformed config / payload */
  ORBITAL_E_NOT_REGULAR = 5,
  ORBITAL_E_PRECISION = 6,
  ORBITAL_E_WINDOW = 7,
  ORBITAL_E_UNSUPPORTED = 8,
  ORBITAL_E_INTERNAL = 9
};

/* config_json: {"p": 3, "precision": 24, "psi_twist": 1} (all optional
 * except p). Returns NULL on error; inspect orbital_last_error(NULL). */
orbital_ctx* orbital_ctx_create(const char* config_json);
void orbital_ctx_destroy(orbital_ctx* ctx);

/* Runs a command; *result_json receives a malloc'd JSON string on success
 * (and on structured failures where a partial report exists). */
int orbital_run(orbital_ctx* ctx, const char* command, const char* payload_json,
                char** result_json);

/* message for the most recent failure on this context (or the most recent
 * context-creation failure when ctx is NULL) */
const char* orbital_last_error(const orbital_ctx* ctx);

void orbital_free(char* s);

/* library version as a string constant */
const char* orbital_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ORBITAL_C_H */
