void rotate(int h, int w, const float *input, float *output) {
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            output[j * h + (h - 1 - i)] = input[i * w + j];
}
