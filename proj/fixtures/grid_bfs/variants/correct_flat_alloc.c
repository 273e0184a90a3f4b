#include <stdio.h>
#include <stdlib.h>
#include <string.h>

/* Same search, but the whole bordered grid lives in one allocation. */
int main(void) {
    int H, W, K;
    if (scanf("%d %d %d", &H, &W, &K) != 3) return 0;
    int r1, c1, r2, c2;
    if (scanf("%d %d %d %d", &r1, &c1, &r2, &c2) != 4) return 0;

    int stride = W + 2;
    char *grid = malloc((size_t)(H + 2) * (size_t)stride);
    int *dist = malloc((size_t)(H + 2) * (size_t)stride * sizeof *dist);
    memset(grid, '@', (size_t)(H + 2) * (size_t)stride);
    for (long idx = 0; idx < (long)(H + 2) * stride; ++idx) dist[idx] = -1;

    char *line = malloc((size_t)W + 8);
    for (int r = 1; r <= H; ++r) {
        if (scanf("%s", line) != 1) return 0;
        memcpy(grid + (size_t)r * stride + 1, line, (size_t)W);
    }

    int *queue = malloc((size_t)H * (size_t)W * 2 * sizeof *queue);
    size_t head = 0, tail = 0;
    dist[(size_t)r1 * stride + c1] = 0;
    queue[tail++] = r1;
    queue[tail++] = c1;
    const int DR[4] = {1, -1, 0, 0};
    const int DC[4] = {0, 0, 1, -1};
    while (head < tail) {
        int r = queue[head++];
        int c = queue[head++];
        int d = dist[(size_t)r * stride + c];
        for (int dir = 0; dir < 4; ++dir) {
            for (int step = 1; step <= K; ++step) {
                int nr = r + DR[dir] * step;
                int nc = c + DC[dir] * step;
                size_t at = (size_t)nr * stride + (size_t)nc;
                if (grid[at] == '@') break;
                if (dist[at] == -1) {
                    dist[at] = d + 1;
                    queue[tail++] = nr;
                    queue[tail++] = nc;
                }
            }
        }
    }
    printf("%d\n", dist[(size_t)r2 * stride + c2]);
    return 0;
}
