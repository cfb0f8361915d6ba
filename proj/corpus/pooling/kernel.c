void pooling(int h, int w, const float *input, float *output) {
    int oh = h / 2;
    int ow = w / 2;
    for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j) {
            float best = input[(2 * i) * w + 2 * j];
            for (int di = 0; di < 2; ++di)
                for (int dj = 0; dj < 2; ++dj) {
                    float v = input[(2 * i + di) * w + (2 * j + dj)];
                    if (v > best)
                        best = v;
                }
            output[i * ow + j] = best;
        }
}
