/*
 * binwords C API.
 *
 * Opaque handles for words and morphisms, integer status codes, and JSON text
 * for structured results. Every function returning bw_status leaves a message
 * retrievable with bw_last_error() on failure (thread-local). Strings handed
 * out through `char**` parameters are owned by the caller and released with
 * bw_string_free().
 */
#ifndef BINWORDS_H_
#define BINWORDS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BINWORDS_BUILDING)
#    define BW_API __declspec(dllexport)
#  else
#    define BW_API __declspec(dllimport)
#  endif
#else
#  define BW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bw_status {
  BW_OK = 0,
  BW_ERR_INVALID_INPUT = 1,
  BW_ERR_PARSE = 2,
  BW_ERR_UNSUPPORTED_ORDER = 3,
  BW_ERR_OVERFLOW = 4,
  BW_ERR_BOUNDS = 5,
  BW_ERR_UNSUPPORTED = 6,
  BW_ERR_NO_LINEAR_ACTION = 7,
  BW_ERR_BUDGET = 8,
  BW_ERR_INTERNAL = 9
} bw_status;

typedef struct bw_word bw_word;
typedef struct bw_morphism bw_morphism;

typedef struct bw_budget {
  uint64_t max_nodes; /* 0: unlimited */
  uint64_t max_ms;    /* 0: unlimited */
} bw_budget;

/* Called with (depth, nodes, live nodes at depth) during searches. */
typedef void (*bw_progress_fn)(size_t depth, uint64_t nodes, uint64_t alive, void* user);

BW_API const char* bw_version(void);
BW_API const char* bw_last_error(void);
BW_API const char* bw_status_name(bw_status status);
BW_API void bw_string_free(char* s);

/* Words ------------------------------------------------------------------ */

/* ASCII digit string; alphabet_size 0 infers max(2, largest digit + 1). */
BW_API bw_status bw_word_parse(const char* text, int alphabet_size, bw_word** out);
BW_API void bw_word_free(bw_word* w);
BW_API size_t bw_word_length(const bw_word* w);
BW_API int bw_word_alphabet(const bw_word* w);
BW_API bw_status bw_word_to_string(const bw_word* w, char** out);
BW_API bw_status bw_word_mirror(const bw_word* w, bw_word** out);

BW_API bw_status bw_subword_count(const bw_word* u, const bw_word* x, uint64_t* out);
/* {"m":..,"alphabet":..,"counts":{..}} */
BW_API bw_status bw_signature_json(const bw_word* u, int order, char** out_json);
BW_API bw_status bw_equivalent(const bw_word* u, const bw_word* v, int order, int* out);
BW_API bw_status bw_lambda(const bw_word* u, int64_t* out);

/* Morphisms -------------------------------------------------------------- */

BW_API bw_status bw_morphism_parse(const char* spec, bw_morphism** out);
/* g, g2, gtilde, gtilde2, h, e; *seed receives the preset's usual seed letter. */
BW_API bw_status bw_morphism_preset(const char* name, bw_morphism** out, int* seed);
BW_API void bw_morphism_free(bw_morphism* f);
BW_API bw_status bw_morphism_to_string(const bw_morphism* f, char** out);
BW_API bw_status bw_morphism_apply(const bw_morphism* f, const bw_word* u, bw_word** out);
BW_API bw_status bw_morphism_compose(const bw_morphism* f, const bw_morphism* g,
                                     bw_morphism** out);
BW_API bw_status bw_morphism_mirror(const bw_morphism* f, bw_morphism** out);
BW_API int bw_morphism_is_prolongable(const bw_morphism* f, int letter);
BW_API bw_status bw_fixed_point_prefix(const bw_morphism* f, int letter, size_t n,
                                       bw_word** out);
/* Greedy prefix-code factorisation; *consumed letters of w were decoded. */
BW_API bw_status bw_decode(const bw_word* w, const bw_morphism* f, bw_word** preimage,
                           size_t* consumed);
/* {"m":..,"alphabet":..,"matrix":[[..],..],"determinant":..,"invertible":..} */
BW_API bw_status bw_lift_json(const bw_morphism* f, int order, char** out_json);

/* Repetitions ------------------------------------------------------------ */

/* Report JSON as documented in the README; *found is 1 if a power occurs. */
BW_API bw_status bw_detect_json(const bw_word* w, int order, int power, unsigned threads,
                                int include_timing, char** out_json, int* found);
BW_API bw_status bw_scan_fixed_point_json(const bw_morphism* f, int letter, size_t n, int order,
                                          int power, unsigned threads, int include_timing,
                                          char** out_json, int* found);

/* Search ----------------------------------------------------------------- */

/* BW_ERR_BUDGET still fills *out_json with the partial certificate. */
BW_API bw_status bw_search_json(int alphabet_size, int order, int power, size_t cap,
                                const bw_budget* budget, int fix_first_letter,
                                bw_progress_fn progress, void* user, char** out_json);
/* format: "json" or "tsv". */
BW_API bw_status bw_count(int alphabet_size, int order, int power, size_t max_length,
                          const bw_budget* budget, int fix_first_letter, unsigned threads,
                          const char* format, char** out);

/* Verification ----------------------------------------------------------- */

/* config_json: optional object overriding defaults, e.g.
 * {"seed":1,"threads":1,"checks":["matrix"],"faults":["matrix"],
 *  "scan_len":10,"matrix_trials":1000}. NULL or "" for defaults.
 * *passed is 1 iff every selected check passed. */
/* JSON array of check names accepted in "checks" and "faults". */
BW_API bw_status bw_check_names_json(char** out_json);
BW_API bw_status bw_verify_json(const char* config_json, int include_timing, char** out_json,
                                int* passed);

#ifdef __cplusplus
}
#endif

#endif /* BINWORDS_H_ */
