#include <stdio.h>

/* Wrong: tests the wrong remainder. */
int main(void) {
    long long n;
    if (scanf("%lld", &n) != 1) return 0;
    long long count = 0;
    for (long long a = 1; a <= n; ++a)
        for (long long b = 1; b <= n; ++b)
            if ((a + b) % 3 == 1) ++count;
    printf("%lld\n", count);
    return 0;
}
