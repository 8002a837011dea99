bool Buffer::append(const char* data, std::size_t len)
{
    if (size_ + len > capacity_ && !grow(size_ + len)) return false;
    std::memcpy(data_ + size_, data, len);
    size_ += len;
    return true;
}
