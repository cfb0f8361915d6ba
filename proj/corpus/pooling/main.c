#include <stdio.h>

void pooling(int h, int w, const float *input, float *output);

int main(void) {
    enum { H = 12, W = 12 };
    static float input[H * W], output[(H / 2) * (W / 2)];
    for (int i = 0; i < H * W; ++i)
        input[i] = (float)((i * 7 + 3) % 13) * 0.25f - 1.0f;
    pooling(H, W, input, output);
    double checksum = 0.0;
    for (int i = 0; i < (H / 2) * (W / 2); ++i) {
        printf("%.6f\n", (double)output[i]);
        checksum += (double)output[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
