#include <stdio.h>

void gemver(int n, float alpha, float beta, float *a, const float *u1, const float *v1,
            const float *u2, const float *v2, float *w, float *x, const float *y,
            const float *z);

int main(void) {
    enum { N = 12 };
    static float a[N * N], u1[N], v1[N], u2[N], v2[N], w[N], x[N], y[N], z[N];
    for (int i = 0; i < N; ++i) {
        u1[i] = (float)(i % 5) * 0.2f;
        v1[i] = (float)((i * 2 + 1) % 7) * 0.125f;
        u2[i] = (float)((i + 3) % 4) * 0.25f;
        v2[i] = (float)((i * 3 + 2) % 5) * 0.1f;
        w[i] = 0.0f;
        x[i] = 0.0f;
        y[i] = (float)((i * 7 + 1) % 6) * 0.125f;
        z[i] = (float)((i + 2) % 8) * 0.0625f;
        for (int j = 0; j < N; ++j)
            a[i * N + j] = (float)((i * 5 + j * 2) % 11) * 0.125f;
    }
    gemver(N, 1.25f, 0.75f, a, u1, v1, u2, v2, w, x, y, z);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)w[i]);
        checksum += (double)w[i];
    }
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)x[i]);
        checksum += (double)x[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
