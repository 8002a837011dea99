int flip(int v)
{
    int a = ~v;
    int b = !v;
    int c = -v;
    int d = +v;
    return a + b + c + d;
}
