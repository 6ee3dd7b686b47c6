#ifndef POLYKW_H
#define POLYKW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PKW_STATUS_OK = 0,
  PKW_STATUS_NULL_POINTER = 1,
  PKW_STATUS_INVALID_UTF8 = 2,
  PKW_STATUS_INVALID_ARGUMENT = 3,
  PKW_STATUS_UNKNOWN_EXTRACTOR = 4,
  PKW_STATUS_PROVIDER_REQUIRED = 5,
  PKW_STATUS_DATA_ERROR = 6,
  PKW_STATUS_PANIC = 7,
} PkwStatus;

typedef struct PkwExtractor PkwExtractor;

typedef struct PkwNormalizer PkwNormalizer;

// Metrics for one ranked prediction list.
typedef struct {
  double precision;
  double recall;
  double f1;
  double precision_fixed_k;
  double f1_fixed_k;
  uintptr_t matches;
  uintptr_t considered;
} PkwScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *pkw_last_error(void);

// Library version as a static NUL-terminated string.
const char *pkw_version(void);

// Creates a normalizer for `lang`. `mode` may be null for the language
// default, or one of `porter`, `latvian`, `identity`.
//
// # Safety
// `lang` and `mode` must be null or NUL-terminated strings; `out` must be
// writable.
PkwStatus pkw_normalizer_new(const char *lang, const char *mode, PkwNormalizer **out);

// # Safety
// `n` must be null or a handle from [`pkw_normalizer_new`] not yet freed.
void pkw_normalizer_free(PkwNormalizer *n);

// Normalized form of a phrase, tokens joined by single spaces.
//
// # Safety
// Pointers must be valid; the returned string must be released with
// [`pkw_string_free`].
PkwStatus pkw_normalize_phrase(const PkwNormalizer *n, const char *phrase, char **out);

// Creates an extractor. `config_json` may be null for defaults or a JSON
// object keyed by method (`{"kpminer": {"lasf": 2}}`); missing fields keep
// their defaults.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
PkwStatus pkw_extractor_new(const char *method, const char *config_json, PkwExtractor **out);

// Attaches a precomputed embeddings file (`text<TAB>v1 v2 ...`) as the
// embedding provider.
//
// # Safety
// `e` must be a live extractor handle and `path` a NUL-terminated string.
PkwStatus pkw_extractor_set_embeddings(PkwExtractor *e, const char *path);

// # Safety
// `e` must be null or a handle from [`pkw_extractor_new`] not yet freed.
void pkw_extractor_free(PkwExtractor *e);

// Extracts up to `k` keywords from `text`, writing a JSON array of
// `{"phrase", "score"}` objects ranked best first.
//
// # Safety
// Handles must be live, strings NUL-terminated; the returned string must be
// released with [`pkw_string_free`].
PkwStatus pkw_extract(const PkwExtractor *e,
                      const PkwNormalizer *n,
                      const char *text,
                      uintptr_t k,
                      char **out_json);

// Scores predictions against gold phrases. Both arguments are JSON arrays of
// strings; predictions are best first. Gold phrases are normalized here and
// all count as present.
//
// # Safety
// Pointers must be valid; `out` must be writable.
PkwStatus pkw_score_at_k(const PkwNormalizer *n,
                         const char *predicted_json,
                         const char *gold_json,
                         uintptr_t k,
                         PkwScores *out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void pkw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYKW_H */
