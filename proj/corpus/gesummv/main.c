#include <stdio.h>

void gesummv(int n, float alpha, float beta, const float *a, const float *b, const float *x,
             float *y);

int main(void) {
    enum { N = 16 };
    static float a[N * N], b[N * N], x[N], y[N];
    for (int i = 0; i < N; ++i) {
        x[i] = (float)((i * 3 + 1) % 8) * 0.125f;
        for (int j = 0; j < N; ++j) {
            a[i * N + j] = (float)((i + j * 2) % 9) * 0.125f;
            b[i * N + j] = (float)((i * 2 + j) % 7) * 0.25f;
        }
    }
    gesummv(N, 1.5f, 0.5f, a, b, x, y);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)y[i]);
        checksum += (double)y[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
