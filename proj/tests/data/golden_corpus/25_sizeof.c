size_t bytes(int n)
{
    return n * sizeof(int) + sizeof n;
}
