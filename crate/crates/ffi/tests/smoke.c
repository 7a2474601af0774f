#include <stdio.h>
#include <string.h>

#include "partavoid.h"

static int expect(const char *got, const char *want) {
    if (strcmp(got, want) != 0) {
        fprintf(stderr, "got %s, want %s\n", got, want);
        return 1;
    }
    return 0;
}

int main(void) {
    int bad = 0;
    PaPartition *tau = NULL;
    if (pa_partition_parse("1 3/2 4", &tau) != PA_STATUS_OK) return 10;

    char *count = NULL;
    if (pa_count_avoiders(tau, 7, PA_METHOD_ORACLE, 1, &count) != PA_STATUS_OK) return 11;
    bad |= expect(count, "429");
    pa_string_free(count);

    PaPartition *sigma = NULL;
    if (pa_partition_parse("135/24", &sigma) != PA_STATUS_OK) return 12;
    bool yes = false;
    if (pa_contains(sigma, tau, &yes) != PA_STATUS_OK || !yes) bad |= 1;

    PaPartition *junk = NULL;
    if (pa_partition_parse("1/1", &junk) != PA_STATUS_PARSE_ERROR) bad |= 1;
    if (strlen(pa_last_error()) == 0) bad |= 1;

    pa_partition_free(sigma);
    pa_partition_free(tau);
    return bad;
}
