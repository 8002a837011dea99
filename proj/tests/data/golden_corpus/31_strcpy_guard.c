void copy_name(char *dst, const char *src, size_t cap)
{
    if (dst == NULL || src == NULL || cap == 0)
        return;
    strncpy(dst, src, cap - 1);
    dst[cap - 1] = '\0';
}
