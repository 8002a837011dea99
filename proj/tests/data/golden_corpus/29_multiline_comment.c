int answer(void)
{
    /*
     * if (x) return 1;
     * while (y) {}
     */
    return 42;
}
