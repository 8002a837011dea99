int validate(const struct cfg *c)
{
    if (!c) return 0;
    if (c->port <= 0 || c->port > 65535) return 0;
    if (c->threads < 1 && !c->auto_threads) return 0;
    return 1;
}
