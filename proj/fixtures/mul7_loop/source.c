#include <stdio.h>

/* Day-counting game: 3 points per day, a 10-point bonus every 7th day.
 * Prints the number of days needed to reach the target score. The hot loop
 * divides by the constant 7 on every iteration. */
int main(void) {
    long long target;
    if (scanf("%lld", &target) != 1) return 0;
    long long points = 0, days = 0;
    while (points < target) {
        ++days;
        points += 3;
        if (days % 7 == 0) points += 10;
    }
    printf("%lld\n", days);
    return 0;
}
