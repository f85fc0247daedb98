#ifndef STROBJ_H
#define STROBJ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum StrobjStatus {
  STROBJ_STATUS_OK = 0,
  STROBJ_STATUS_NULL_POINTER = 1,
  STROBJ_STATUS_INVALID_UTF8 = 2,
  STROBJ_STATUS_PARSE_ERROR = 3,
  STROBJ_STATUS_INVALID_ARGUMENT = 4,
  STROBJ_STATUS_INTERNAL = 5,
} StrobjStatus;

/**
 * An abstract string value.
 */
typedef struct StrobjObject StrobjObject;

/**
 * Alphabet and custom properties shared by a family of objects.
 */
typedef struct StrobjSession StrobjSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *strobj_last_error(void);

/**
 * Creates a session over the letters of `alphabet`. `props_json` is a
 * property configuration document or null.
 *
 * # Safety
 * `alphabet` and a non-null `props_json` are NUL-terminated strings;
 * `out` is valid for writes.
 */
enum StrobjStatus strobj_session_new(const char *alphabet,
                                     const char *props_json,
                                     struct StrobjSession **out);

/**
 * # Safety
 * `session` is null or was returned by [`strobj_session_new`] and not yet freed.
 */
void strobj_session_free(struct StrobjSession *session);

/**
 * The object describing exactly the string `w`.
 *
 * # Safety
 * `session` is a live session, `w` a NUL-terminated string, `out` valid for writes.
 */
enum StrobjStatus strobj_object_atom(const struct StrobjSession *session,
                                     const char *w,
                                     struct StrobjObject **out);

/**
 * The object describing every string.
 *
 * # Safety
 * `out` is valid for writes.
 */
enum StrobjStatus strobj_object_top(struct StrobjObject **out);

/**
 * Decodes an object from its JSON form.
 *
 * # Safety
 * `session` is a live session, `json` a NUL-terminated string, `out` valid for writes.
 */
enum StrobjStatus strobj_object_from_json(const struct StrobjSession *session,
                                          const char *json,
                                          struct StrobjObject **out);

/**
 * # Safety
 * `object` is null or was returned by this library and not yet freed.
 */
void strobj_object_free(struct StrobjObject *object);

/**
 * Least upper bound of two objects.
 *
 * # Safety
 * All handles are live and `out` is valid for writes.
 */
enum StrobjStatus strobj_object_join(const struct StrobjSession *session,
                                     const struct StrobjObject *a,
                                     const struct StrobjObject *b,
                                     struct StrobjObject **out);

/**
 * Greatest lower bound of two objects.
 *
 * # Safety
 * All handles are live and `out` is valid for writes.
 */
enum StrobjStatus strobj_object_meet(const struct StrobjSession *session,
                                     const struct StrobjObject *a,
                                     const struct StrobjObject *b,
                                     struct StrobjObject **out);

/**
 * Abstract concatenation `a + b`.
 *
 * # Safety
 * All handles are live and `out` is valid for writes.
 */
enum StrobjStatus strobj_object_concat(const struct StrobjSession *session,
                                       const struct StrobjObject *a,
                                       const struct StrobjObject *b,
                                       struct StrobjObject **out);

/**
 * Whether `w` satisfies every property of `object`.
 *
 * # Safety
 * Handles are live, `w` is a NUL-terminated string, `out` valid for writes.
 */
enum StrobjStatus strobj_object_contains(const struct StrobjSession *session,
                                         const struct StrobjObject *object,
                                         const char *w,
                                         bool *out);

/**
 * JSON form of `object`; free the result with [`strobj_string_free`].
 *
 * # Safety
 * Handles are live and `out` is valid for writes.
 */
enum StrobjStatus strobj_object_to_json(const struct StrobjSession *session,
                                        const struct StrobjObject *object,
                                        char **out);

/**
 * Analyzes `program` and writes the JSON report. `props_json` and
 * `alphabet` may be null; the alphabet then defaults to the letters in
 * use plus one more.
 *
 * # Safety
 * Non-null arguments are NUL-terminated strings; `out` is valid for writes.
 */
enum StrobjStatus strobj_analyze(const char *program,
                                 const char *props_json,
                                 const char *alphabet,
                                 char **out);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void strobj_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STROBJ_H */
