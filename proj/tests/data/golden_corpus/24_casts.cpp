int to_int(double d)
{
    auto r = static_cast<int>(d);
    auto p = reinterpret_cast<const char*>(&r);
    return r + (p != nullptr);
}
