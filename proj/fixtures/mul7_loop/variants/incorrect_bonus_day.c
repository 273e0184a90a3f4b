#include <stdio.h>

/* Wrong: pays the bonus on the first day of each week. */
int main(void) {
    long long target;
    if (scanf("%lld", &target) != 1) return 0;
    long long points = 0, days = 0;
    while (points < target) {
        ++days;
        points += 3;
        if (days % 7 == 1) points += 10;
    }
    printf("%lld\n", days);
    return 0;
}
