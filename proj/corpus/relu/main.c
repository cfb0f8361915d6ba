#include <stdio.h>

void relu(int n, const float *x, float *y);

int main(void) {
    enum { N = 32 };
    static float x[N], y[N];
    for (int i = 0; i < N; ++i)
        x[i] = (float)((i * 5 + 2) % 9) * 0.5f - 2.0f;
    relu(N, x, y);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)y[i]);
        checksum += (double)y[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
