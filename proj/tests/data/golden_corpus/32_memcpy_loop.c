void blit(unsigned char *dst, const unsigned char *src, int rows, int stride)
{
    for (int r = 0; r < rows; r++) {
        memcpy(dst + r * stride, src + r * stride, stride);
    }
}
