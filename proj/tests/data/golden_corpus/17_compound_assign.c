unsigned mix(unsigned h, unsigned k)
{
    h ^= k;
    h *= 0x5bd1e995;
    h += h >> 13;
    h %= 1000003;
    h |= 1;
    h &= 0xffff;
    h -= 7;
    h /= 3;
    return h;
}
