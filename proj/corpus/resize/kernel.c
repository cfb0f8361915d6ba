void resize(int in_h, int in_w, int out_h, int out_w, const float *input, float *output) {
    for (int i = 0; i < out_h; ++i)
        for (int j = 0; j < out_w; ++j) {
            float sy = ((float)i + 0.5f) * (float)in_h / (float)out_h - 0.5f;
            float sx = ((float)j + 0.5f) * (float)in_w / (float)out_w - 0.5f;
            if (sy < 0.0f)
                sy = 0.0f;
            if (sx < 0.0f)
                sx = 0.0f;
            int y0 = (int)sy;
            int x0 = (int)sx;
            int y1 = y0 + 1 < in_h ? y0 + 1 : in_h - 1;
            int x1 = x0 + 1 < in_w ? x0 + 1 : in_w - 1;
            float fy = sy - (float)y0;
            float fx = sx - (float)x0;
            float top = input[y0 * in_w + x0] * (1.0f - fx) + input[y0 * in_w + x1] * fx;
            float bot = input[y1 * in_w + x0] * (1.0f - fx) + input[y1 * in_w + x1] * fx;
            output[i * out_w + j] = top * (1.0f - fy) + bot * fy;
        }
}
