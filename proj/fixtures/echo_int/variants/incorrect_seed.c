#include <stdio.h>

/* Wrong: folds from 0 instead of 1. */
int main(void) {
    long long n;
    if (scanf("%lld", &n) != 1) return 0;
    long long acc = 7;
    for (long long i = 0; i <= n; ++i) {
        acc = (acc * 31 + i) % 1000000007LL;
    }
    printf("%lld\n", acc);
    return 0;
}
