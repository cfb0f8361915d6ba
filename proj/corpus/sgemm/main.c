#include <stdio.h>

void sgemm(int m, int n, int k, float alpha, float beta, const float *a, const float *b,
           float *c);

int main(void) {
    enum { M = 8, N = 9, K = 10 };
    static float a[M * K], b[K * N], c[M * N];
    for (int i = 0; i < M * K; ++i)
        a[i] = (float)((i * 3 + 1) % 8) * 0.125f;
    for (int i = 0; i < K * N; ++i)
        b[i] = (float)((i + 2) % 7) * 0.25f;
    for (int i = 0; i < M * N; ++i)
        c[i] = (float)((i * 5) % 6) * 0.125f;
    sgemm(M, N, K, 1.25f, 0.75f, a, b, c);
    double checksum = 0.0;
    for (int i = 0; i < M * N; ++i) {
        printf("%.6f\n", (double)c[i]);
        checksum += (double)c[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
