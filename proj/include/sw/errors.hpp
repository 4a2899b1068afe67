#pragma once

#include <stdexcept>
#include <string>

namespace sw {

// Bad arguments or malformed specs.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically undefined request (divergent integral, infinite moment).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Budget exhausted (proposal cap, support cap).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sw
