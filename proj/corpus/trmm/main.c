#include <stdio.h>

void trmm(int n, int m, float alpha, const float *a, float *b);

int main(void) {
    enum { N = 12, M = 10 };
    static float a[N * N], b[N * M];
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            a[i * N + j] = (float)((i * 3 + j) % 7) * 0.25f;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < M; ++j)
            b[i * M + j] = (float)((i + j * 5) % 9) * 0.125f;
    trmm(N, M, 1.5f, a, b);
    double checksum = 0.0;
    for (int i = 0; i < N * M; ++i) {
        printf("%.6f\n", (double)b[i]);
        checksum += (double)b[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
