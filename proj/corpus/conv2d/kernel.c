void conv2d(int h, int w, const float *input, const float *weights, float *output) {
    for (int i = 0; i + 2 < h; ++i)
        for (int j = 0; j + 2 < w; ++j) {
            float acc = 0.0f;
            for (int ki = 0; ki < 3; ++ki)
                for (int kj = 0; kj < 3; ++kj)
                    acc += input[(i + ki) * w + (j + kj)] * weights[ki * 3 + kj];
            output[i * (w - 2) + j] = acc;
        }
}
