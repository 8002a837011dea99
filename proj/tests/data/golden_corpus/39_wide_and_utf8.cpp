void greet()
{
    const wchar_t* w = L"hi";
    const char* u = u8"h\u00e9";
    const char32_t c = U'x';
    emit(w, u, c);
}
