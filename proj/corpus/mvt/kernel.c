void mvt(int n, float *x1, float *x2, const float *y1, const float *y2, const float *a) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            x1[i] += a[i * n + j] * y1[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            x2[i] += a[j * n + i] * y2[j];
}
