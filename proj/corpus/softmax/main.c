#include <stdio.h>

void softmax(int n, const float *x, float *y);

int main(void) {
    enum { N = 16 };
    static float x[N], y[N];
    for (int i = 0; i < N; ++i)
        x[i] = (float)((i * 3 + 1) % 9) * 0.5f - 2.0f;
    softmax(N, x, y);
    double checksum = 0.0;
    for (int i = 0; i < N; ++i) {
        printf("%.6f\n", (double)y[i]);
        checksum += (double)y[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
