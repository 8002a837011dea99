int skip_blank(const char *s)
{
    int n = 0;
    while (*s == ' ' || *s == '\t') {
        ++s;
        ++n;
    }
    return n;
}
