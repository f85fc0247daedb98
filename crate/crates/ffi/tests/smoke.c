#include <stdio.h>
#include <string.h>

#include "strobj.h"

#define CHECK(call)                                                   \
    do {                                                              \
        StrobjStatus st = (call);                                     \
        if (st != STROBJ_STATUS_OK) {                                 \
            fprintf(stderr, "%s -> %d: %s\n", #call, (int)st,         \
                    strobj_last_error());                             \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    StrobjSession *s = NULL;
    StrobjObject *a = NULL, *top = NULL, *cat = NULL;
    char *json = NULL;
    bool inside = false;

    CHECK(strobj_session_new("ab_", NULL, &s));
    CHECK(strobj_object_atom(s, "ab", &a));
    CHECK(strobj_object_top(&top));
    CHECK(strobj_object_concat(s, a, top, &cat));
    CHECK(strobj_object_to_json(s, cat, &json));
    if (strstr(json, "\"prefix\":\"ab\"") == NULL) {
        fprintf(stderr, "unexpected %s\n", json);
        return 1;
    }
    CHECK(strobj_object_contains(s, cat, "ab_b", &inside));
    if (!inside) {
        return 1;
    }
    if (strobj_object_atom(s, "xyz", &a) != STROBJ_STATUS_INVALID_ARGUMENT) {
        return 1;
    }
    strobj_string_free(json);
    strobj_object_free(cat);
    strobj_object_free(top);
    strobj_object_free(a);
    strobj_session_free(s);
    puts("ok");
    return 0;
}
