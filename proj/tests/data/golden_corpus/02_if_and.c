void g(int a, int b){if(a&&b)x();}
