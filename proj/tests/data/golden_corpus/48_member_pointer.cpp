int call_member(Widget* w, int (Widget::*fn)() const)
{
    return (w->*fn)();
}
