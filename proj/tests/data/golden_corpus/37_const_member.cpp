std::size_t Table::width() const noexcept
{
    return columns_.empty() ? 0 : columns_.front().size();
}
