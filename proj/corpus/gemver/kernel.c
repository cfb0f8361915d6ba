void gemver(int n, float alpha, float beta, float *a, const float *u1, const float *v1,
            const float *u2, const float *v2, float *w, float *x, const float *y,
            const float *z) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i * n + j] += u1[i] * v1[j] + u2[i] * v2[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            x[i] += beta * a[j * n + i] * y[j];
    for (int i = 0; i < n; ++i)
        x[i] += z[i];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[i] += alpha * a[i * n + j] * x[j];
}
