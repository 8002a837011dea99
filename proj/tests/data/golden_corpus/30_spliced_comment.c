int spliced(int x)
{
    // this comment continues \
    if (x) return 1;
    return x;
}
