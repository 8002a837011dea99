int is_query(char c)
{
    return c == '?';
}
