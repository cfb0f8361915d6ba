#include <math.h>

void softmax(int n, const float *x, float *y) {
    float max = x[0];
    for (int i = 1; i < n; ++i)
        if (x[i] > max)
            max = x[i];
    float sum = 0.0f;
    for (int i = 0; i < n; ++i) {
        y[i] = expf(x[i] - max);
        sum += y[i];
    }
    for (int i = 0; i < n; ++i)
        y[i] /= sum;
}
