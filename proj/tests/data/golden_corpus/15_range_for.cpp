long total(const std::vector<long>& xs)
{
    long sum = 0;
    for (long x : xs) sum += x;
    return sum;
}
