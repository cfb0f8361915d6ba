void sgemm(int m, int n, int k, float alpha, float beta, const float *a, const float *b,
           float *c) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            float acc = 0.0f;
            for (int p = 0; p < k; ++p)
                acc += a[i * k + p] * b[p * n + j];
            c[i * n + j] = alpha * acc + beta * c[i * n + j];
        }
}
