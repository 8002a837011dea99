double scale(double x)
{
    const long big = 1'000'000;
    const unsigned mask = 0x1Fu;
    const float f = 3.14f;
    return x * 1e+5 + big + mask + f + 0.5e-3L;
}
