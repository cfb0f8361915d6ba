#include <stdio.h>

void saxpy(int n, float a, const float *x, float *y);

int main(void) {
    enum { N = 32 };
    static float x[N], y[N];
    for (int i = 0; i < N; ++i) {
        x[i] = (float)((i * 7 + 3) % 11) * 0.125f;
        y[i] = (float)((i * 5 + 1) % 13) * 0.25f;
    }
    saxpy(N, 1.5f, x, y);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)y[i]);
        checksum += (double)y[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
