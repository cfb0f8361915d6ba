#include <stdio.h>

void rotate(int h, int w, const float *input, float *output);

int main(void) {
    enum { H = 8, W = 10 };
    static float input[H * W], output[W * H];
    for (int i = 0; i < H * W; ++i)
        input[i] = (float)((i * 11 + 4) % 19) * 0.125f;
    rotate(H, W, input, output);
    double checksum = 0.0;
    for (int i = 0; i < W * H; ++i) {
        printf("%.6f\n", (double)output[i]);
        checksum += (double)output[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
