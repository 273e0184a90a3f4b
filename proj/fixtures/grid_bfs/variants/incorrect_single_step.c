#include <stdio.h>
#include <stdlib.h>
#include <string.h>

/* Wrong: ignores K and always moves one cell. */
int main(void) {
    int H, W, K;
    if (scanf("%d %d %d", &H, &W, &K) != 3) return 0;
    int r1, c1, r2, c2;
    if (scanf("%d %d %d %d", &r1, &c1, &r2, &c2) != 4) return 0;

    char **grid = malloc((size_t)(H + 2) * sizeof *grid);
    int **dist = malloc((size_t)(H + 2) * sizeof *dist);
    for (int r = 0; r < H + 2; ++r) {
        grid[r] = malloc((size_t)(W + 2));
        memset(grid[r], '@', (size_t)(W + 2));
        dist[r] = malloc((size_t)(W + 2) * sizeof **dist);
        for (int c = 0; c < W + 2; ++c) dist[r][c] = -1;
    }
    char *line = malloc((size_t)W + 8);
    for (int r = 1; r <= H; ++r) {
        if (scanf("%s", line) != 1) return 0;
        memcpy(&grid[r][1], line, (size_t)W);
    }

    int *queue = malloc((size_t)H * (size_t)W * 2 * sizeof *queue);
    size_t head = 0, tail = 0;
    dist[r1][c1] = 0;
    queue[tail++] = r1;
    queue[tail++] = c1;
    const int DR[4] = {1, -1, 0, 0};
    const int DC[4] = {0, 0, 1, -1};
    while (head < tail) {
        int r = queue[head++];
        int c = queue[head++];
        int d = dist[r][c];
        for (int dir = 0; dir < 4; ++dir) {
            int nr = r + DR[dir];
            int nc = c + DC[dir];
            if (grid[nr][nc] == '@') continue;
            if (dist[nr][nc] == -1) {
                dist[nr][nc] = d + 1;
                queue[tail++] = nr;
                queue[tail++] = nc;
            }
        }
    }
    printf("%d\n", dist[r2][c2]);
    return 0;
}
