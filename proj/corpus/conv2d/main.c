#include <stdio.h>

void conv2d(int h, int w, const float *input, const float *weights, float *output);

int main(void) {
    enum { H = 12, W = 12 };
    static float input[H * W], weights[9], output[(H - 2) * (W - 2)];
    for (int i = 0; i < H * W; ++i)
        input[i] = (float)((i * 5 + 2) % 11) * 0.125f;
    for (int i = 0; i < 9; ++i)
        weights[i] = (float)((i * 2 + 1) % 5) * 0.25f - 0.5f;
    conv2d(H, W, input, weights, output);
    double checksum = 0.0;
    for (int i = 0; i < (H - 2) * (W - 2); ++i) {
        printf("%.6f\n", (double)output[i]);
        checksum += (double)output[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
