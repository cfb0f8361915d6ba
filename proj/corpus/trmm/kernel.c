void trmm(int n, int m, float alpha, const float *a, float *b) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            float acc = b[i * m + j];
            for (int k = i + 1; k < n; ++k)
                acc += a[k * n + i] * b[k * m + j];
            b[i * m + j] = alpha * acc;
        }
}
