#ifndef AELAB_H
#define AELAB_H

/* C interface to the key-agreement laboratory: protocol operations, the
 * recovery attack, the high-order permutation defense, experiment driver,
 * and invariant self-checks. All artifacts cross this boundary as opaque
 * handles backed by canonical JSON; every call reports AE_OK, a domain
 * failure (valid request, unfavorable outcome), or a usage failure
 * (malformed input), with a diagnostic in the caller's err buffer. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define AE_API __attribute__((visibility("default")))

typedef enum ae_status {
  AE_OK = 0,
  AE_ERR_DOMAIN = 1,
  AE_ERR_USAGE = 2
} ae_status;

#define AE_ERR_LEN 512

typedef struct ae_artifact ae_artifact;

AE_API const char* ae_version(void);
AE_API void ae_string_free(char* s);
AE_API void ae_artifact_free(ae_artifact* a);

/* Parse an artifact from JSON text (requires top-level version and kind). */
AE_API ae_status ae_artifact_parse(const char* json_text, ae_artifact** out,
                                   char err[AE_ERR_LEN]);
AE_API const char* ae_artifact_kind(const ae_artifact* a);
/* Serialize; indent < 0 means compact. *out_text is heap-allocated; release
 * with ae_string_free. */
AE_API ae_status ae_artifact_dump(const ae_artifact* a, int indent,
                                  char** out_text, char err[AE_ERR_LEN]);

/* System parameters: n strands over GF(q), k + l published conjugates built
 * from base words of base_word_len conjugated by a z of z_len letters.
 * Non-positive base_word_len / z_len pick the defaults (10 and 2n). */
AE_API ae_status ae_setup(int n, uint32_t q, int k, int l, int base_word_len,
                          int z_len, uint64_t seed, ae_artifact** out_system,
                          char err[AE_ERR_LEN]);

/* side is "alice" or "bob"; non-positive word_len / poly_deg pick the
 * defaults (8 and n-1). */
AE_API ae_status ae_keygen(const ae_artifact* system, const char* side,
                           int word_len, int poly_deg, uint64_t seed,
                           ae_artifact** out_priv, char err[AE_ERR_LEN]);

AE_API ae_status ae_pubkey(const ae_artifact* system, const ae_artifact* priv,
                           ae_artifact** out_pub, char err[AE_ERR_LEN]);

AE_API ae_status ae_shared(const ae_artifact* system, const ae_artifact* priv,
                           const ae_artifact* their_pub,
                           ae_artifact** out_secret, char err[AE_ERR_LEN]);

/* Compare the (matrix, permutation) pair carried by two artifacts
 * (public-key or shared-secret kinds). */
AE_API ae_status ae_pair_equal(const ae_artifact* a, const ae_artifact* b,
                               int* equal, char err[AE_ERR_LEN]);

/* Run the recovery attack from public artifacts only. pub_b may be NULL to
 * reproduce the withheld-key scenario: the input constructor then refuses
 * with "missing public key" and the call returns AE_ERR_DOMAIN before any
 * stage runs. config_json may be NULL or override attack budgets
 * ({"word_len_max", "order_cap", "stall_threshold", "sample_budget",
 * "stage1_budget", "invertible_budget"}). On AE_OK, *recovered reports
 * whether a secret was reconstructed and *out_result carries the full
 * attack-result artifact either way. */
AE_API ae_status ae_attack(const ae_artifact* system, const ae_artifact* pub_a,
                           const ae_artifact* pub_b, const char* config_json,
                           uint64_t seed, int include_timings,
                           ae_artifact** out_result, int* recovered,
                           char err[AE_ERR_LEN]);

/* Generate the high-order permutation set for n points with k generators,
 * sample word-order statistics (samples words of length <= word_len), and
 * emit a defense-report artifact. literal_budget switches the alternative
 * reading of the prime-sum rule. When system is non-NULL, *out_system (if
 * non-NULL) receives a copy of that system rewired around the set. */
AE_API ae_status ae_defend(int n, int k, int word_len, int64_t samples,
                           uint64_t seed, int literal_budget,
                           const ae_artifact* system, ae_artifact** out_report,
                           ae_artifact** out_system, char err[AE_ERR_LEN]);

/* Multi-trial experiment per the config JSON (kind-free plain object; see
 * README for the schema). Emits an experiment-report artifact. */
AE_API ae_status ae_experiment(const char* config_json,
                               ae_artifact** out_report, char err[AE_ERR_LEN]);

/* Run invariant suites (all when suite is NULL; otherwise one of "field",
 * "braid", "emult", "protocol", "subspace", "defense"). *out_text gets one
 * line per suite; *failures the number of failing suites. Returns AE_OK
 * even when suites fail; AE_ERR_USAGE for an unknown suite name. */
AE_API ae_status ae_verify(const char* suite, uint64_t seed, char** out_text,
                           int* failures, char err[AE_ERR_LEN]);

#ifdef __cplusplus
}
#endif

#endif /* AELAB_H */
