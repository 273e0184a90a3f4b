#include <stdio.h>

/* Every 7-day block earns 31 points; jump whole blocks, then finish the
 * tail day by day. */
int main(void) {
    long long target;
    if (scanf("%lld", &target) != 1) return 0;
    long long weeks = target > 0 ? target / 31 : 0;
    long long days = weeks * 7;
    long long points = weeks * 31;
    while (points < target) {
        ++days;
        points += 3;
        if (days % 7 == 0) points += 10;
    }
    printf("%lld\n", days);
    return 0;
}
