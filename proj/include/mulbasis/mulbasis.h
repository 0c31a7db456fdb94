/* C interface to the mulbasis library. */
#ifndef MULBASIS_H
#define MULBASIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(MULBASIS_BUILDING)
#define MB_API __attribute__((visibility("default")))
#else
#define MB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mb_status {
  MB_OK = 0,
  MB_CHECK_FAILED = 1,       /* a checked inequality failed or a search hit its budget */
  MB_ERR_ARGUMENT = 2,
  MB_ERR_RESOURCE = 3,
  MB_ERR_INCOMPLETE_TABLE = 4,
  MB_ERR_INVARIANT = 5,
  MB_ERR_INTERNAL = 6
} mb_status;

typedef struct mb_prime_table mb_prime_table;
typedef struct mb_report mb_report;

MB_API const char* mb_version(void);

/* Message for the last failing call on this thread; empty if none. */
MB_API const char* mb_last_error(void);

MB_API mb_status mb_prime_table_create(uint64_t limit, mb_prime_table** out);
MB_API void mb_prime_table_destroy(mb_prime_table* table);
MB_API uint64_t mb_prime_table_limit(const mb_prime_table* table);
MB_API uint64_t mb_prime_count(const mb_prime_table* table, uint64_t x);

/* Writes up to `capacity` (prime, exponent) pairs; *count receives the number
   of distinct primes, which may exceed capacity. */
MB_API mb_status mb_factorize(const mb_prime_table* table, uint64_t x, uint64_t* primes, unsigned* exponents,
                              size_t capacity, size_t* count);
MB_API mb_status mb_valuation(uint64_t p, uint64_t x, unsigned* out);
MB_API mb_status mb_shift_into_interval(uint64_t x, uint64_t a, uint64_t M, unsigned* k);

/* *covered is 1 when every target is a product of two basis elements; on 0,
   *uncovered holds the smallest missed target. */
MB_API mb_status mb_verify_cover(const uint64_t* targets, size_t n_targets, const uint64_t* basis, size_t n_basis,
                                 int* covered, uint64_t* uncovered);

/* Runs a command described by a JSON object
   {"command": ..., "params": {...}, "seed": ..., "jobs": ..., "format": ..., "budget_nodes": ...}.
   On MB_OK the caller owns *report. */
MB_API mb_status mb_run(const char* config_json, mb_report** report);

/* 0: all checks hold and searches finished; 1 otherwise. */
MB_API int mb_report_exit_code(const mb_report* report);

/* Renders as "json", "csv", "text" or NULL for the configured format. The
   string stays valid until the next render or destroy of this report. */
MB_API const char* mb_report_render(mb_report* report, const char* format);
MB_API void mb_report_destroy(mb_report* report);

/* NUL-separated list of command names, ending with an empty string. */
MB_API const char* mb_command_names(void);

#ifdef __cplusplus
}
#endif

#endif
