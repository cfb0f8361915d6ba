void gesummv(int n, float alpha, float beta, const float *a, const float *b, const float *x,
             float *y) {
    for (int i = 0; i < n; ++i) {
        float s1 = 0.0f;
        float s2 = 0.0f;
        for (int j = 0; j < n; ++j) {
            s1 += a[i * n + j] * x[j];
            s2 += b[i * n + j] * x[j];
        }
        y[i] = alpha * s1 + beta * s2;
    }
}
