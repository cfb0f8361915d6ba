#include <stdio.h>

void kernel_2mm(int ni, int nj, int nk, int nl, float alpha, float beta, float *tmp,
                const float *a, const float *b, const float *c, float *d);

int main(void) {
    enum { NI = 8, NJ = 9, NK = 10, NL = 11 };
    static float tmp[NI * NJ], a[NI * NK], b[NK * NJ], c[NJ * NL], d[NI * NL];
    for (int i = 0; i < NI * NK; ++i)
        a[i] = (float)(i % 7) * 0.125f;
    for (int i = 0; i < NK * NJ; ++i)
        b[i] = (float)((i * 2 + 1) % 5) * 0.25f;
    for (int i = 0; i < NJ * NL; ++i)
        c[i] = (float)((i + 3) % 8) * 0.125f;
    for (int i = 0; i < NI * NL; ++i)
        d[i] = (float)((i * 3 + 2) % 6) * 0.25f;
    kernel_2mm(NI, NJ, NK, NL, 1.25f, 0.5f, tmp, a, b, c, d);
    double checksum = 0.0;
    for (int i = 0; i < NI * NL; ++i) {
        printf("%.6f\n", (double)d[i]);
        checksum += (double)d[i];
    }
    printf("%.6f\n", checksum);
    return 0;
}
