void kernel_2mm(int ni, int nj, int nk, int nl, float alpha, float beta, float *tmp,
                const float *a, const float *b, const float *c, float *d) {
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j) {
            float acc = 0.0f;
            for (int k = 0; k < nk; ++k)
                acc += alpha * a[i * nk + k] * b[k * nj + j];
            tmp[i * nj + j] = acc;
        }
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nl; ++j) {
            float acc = beta * d[i * nl + j];
            for (int k = 0; k < nj; ++k)
                acc += tmp[i * nj + k] * c[k * nl + j];
            d[i * nl + j] = acc;
        }
}
