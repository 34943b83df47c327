#pragma once

#include <stdexcept>
#include <string>

namespace anonpal {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("syntax error at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace anonpal
