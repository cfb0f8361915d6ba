#include <stdio.h>

void resize(int in_h, int in_w, int out_h, int out_w, const float *input, float *output);

int main(void) {
    enum { IH = 8, IW = 8, OH = 12, OW = 12 };
    static float input[IH * IW], output[OH * OW];
    for (int i = 0; i < IH * IW; ++i)
        input[i] = (float)((i * 3 + 5) % 17) * 0.25f;
    resize(IH, IW, OH, OW, input, output);
    double checksum = 0.0;
    for (int i = 0; i < OH * OW; ++i) {
        printf("%.6f\n", (double)output[i]);
        checksum += (double)output[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
