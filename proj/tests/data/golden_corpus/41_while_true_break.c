int read_all(int fd, char *buf, int cap)
{
    int got = 0;
    while (1) {
        int n = read(fd, buf + got, cap - got);
        if (n <= 0)
            break;
        got += n;
        if (got == cap)
            break;
    }
    return got;
}
