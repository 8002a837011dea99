void h(void){for(;;){if(p)q();}}
