#include <stdio.h>

/* Reads n, folds the sequence 1..n through a multiplicative hash, prints
 * the result. Runtime is linear in n. */
int main(void) {
    long long n;
    if (scanf("%lld", &n) != 1) return 0;
    long long acc = 7;
    for (long long i = 1; i <= n; ++i) {
        acc = (acc * 31 + i) % 1000000007LL;
    }
    printf("%lld\n", acc);
    return 0;
}
