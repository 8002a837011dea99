void noop(void){;}
