int sign(int v)
{
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}
