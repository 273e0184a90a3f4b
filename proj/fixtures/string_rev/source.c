#include <stdio.h>
#include <stdlib.h>

/* Reads one line, then runs 200 reverse-and-checksum passes over it.
 * Prints the final checksum and the final string. */
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

    unsigned long long checksum = 0;
    for (int pass = 0; pass < 200; ++pass) {
        for (size_t a = 0, b = len; a + 1 < b; ++a, --b) {
            char t = s[a];
            s[a] = s[b - 1];
            s[b - 1] = t;
        }
        for (size_t k = 0; k < len; ++k)
            checksum = checksum * 131 + (unsigned char)s[k];
        checksum %= 1000000007ULL;
    }
    printf("%llu\n%s\n", checksum, s);
    free(s);
    return 0;
}
