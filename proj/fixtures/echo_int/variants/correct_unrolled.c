#include <stdio.h>

/* Same fold, two steps per iteration. */
int main(void) {
    long long n;
    if (scanf("%lld", &n) != 1) return 0;
    long long acc = 7;
    long long i = 1;
    for (; i + 1 <= n; i += 2) {
        acc = (acc * 961 + 31 * i + i + 1) % 1000000007LL;
    }
    for (; i <= n; ++i) {
        acc = (acc * 31 + i) % 1000000007LL;
    }
    printf("%lld\n", acc);
    return 0;
}
