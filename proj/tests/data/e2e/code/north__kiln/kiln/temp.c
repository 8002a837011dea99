static const double kAmbient = 21.5;

double kiln_ramp(double start, double target, int steps)
{
    double t = start;
    double step = (target - start) / steps;
    for (int i = 0; i < steps; ++i) {
        t += step;
    }
    return t;
}

int kiln_ready(double t, double target)
{
    return t >= target ? 1 : 0;
}

double kiln_cool(double t)
{
    while (t > kAmbient) {
        t -= 1.0;
    }
    return t;
}
