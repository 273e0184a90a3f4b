#include <stdio.h>
#include <stdlib.h>

/* The pass checksum is an affine function of the previous checksum, so the
 * two per-orientation folds can be computed once and replayed. */
int main(void) {
    size_t cap = 16, len = 0;
    char *s = malloc(cap);
    int ch;
    while ((ch = getchar()) != EOF && ch != '\n') {
        if (len + 2 >= cap) {
            cap *= 2;
            s = realloc(s, cap);
        }
        s[len++] = (char)ch;
    }
    s[len] = 0;

    unsigned long long power = 1, fold_fwd = 0, fold_rev = 0;
    for (size_t k = 0; k < len; ++k) {
        power *= 131ULL;
        fold_fwd = fold_fwd * 131 + (unsigned char)s[k];
        fold_rev = fold_rev * 131 + (unsigned char)s[len - 1 - k];
    }
    unsigned long long checksum = 0;
    for (int pass = 0; pass < 200; ++pass) {
        checksum = checksum * power + (pass % 2 == 0 ? fold_rev : fold_fwd);
        checksum %= 1000000007ULL;
    }
    printf("%llu\n%s\n", checksum, s);
    free(s);
    return 0;
}
