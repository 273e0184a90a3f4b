#include <stdio.h>

/* For each a, the matching b values form one residue class mod 3. */
int main(void) {
    long long n;
    if (scanf("%lld", &n) != 1) return 0;
    /* in_class[r] = how many b in 1..n have b % 3 == r */
    long long in_class[3];
    for (int r = 0; r < 3; ++r) {
        if (r == 0)
            in_class[r] = n / 3;
        else
            in_class[r] = n >= r ? (n - r) / 3 + 1 : 0;
    }
    long long count = 0;
    for (long long a = 1; a <= n; ++a)
        count += in_class[(3 - a % 3) % 3];
    printf("%lld\n", count);
    return 0;
}
