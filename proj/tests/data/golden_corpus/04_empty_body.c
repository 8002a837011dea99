void e(void){}
