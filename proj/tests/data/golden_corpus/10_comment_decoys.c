int id(int x)
{
    /* if (x) { while (y) ; } */
    // for (;;) if && || ? case
    return x;
}
