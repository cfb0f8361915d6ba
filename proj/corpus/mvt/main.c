#include <stdio.h>

void mvt(int n, float *x1, float *x2, const float *y1, const float *y2, const float *a);

int main(void) {
    enum { N = 16 };
    static float x1[N], x2[N], y1[N], y2[N], a[N * N];
    for (int i = 0; i < N; ++i) {
        x1[i] = (float)(i % 4) * 0.25f;
        x2[i] = (float)((i + 2) % 5) * 0.2f;
        y1[i] = (float)((i * 3) % 7) * 0.125f;
        y2[i] = (float)((i * 5 + 1) % 6) * 0.25f;
        for (int j = 0; j < N; ++j)
            a[i * N + j] = (float)((i * 2 + j * 3) % 9) * 0.125f;
    }
    mvt(N, x1, x2, y1, y2, a);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)x1[i]);
        checksum += (double)x1[i];
    }
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)x2[i]);
        checksum += (double)x2[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
