#pragma once

#include <stdexcept>
#include <string>

namespace permorder {

/// Thrown when an operation would exceed a configured size cap.
/// Carries the offending quantity so callers can report it.
class ResourceError : public std::runtime_error {
public:
    ResourceError(std::string quantity, unsigned long value, unsigned long limit)
        : std::runtime_error(quantity + " = " + std::to_string(value) +
                             " exceeds cap " + std::to_string(limit)),
          quantity_(std::move(quantity)),
          value_(value),
          limit_(limit) {}

    const std::string& quantity() const { return quantity_; }
    unsigned long value() const { return value_; }
    unsigned long limit() const { return limit_; }

private:
    std::string quantity_;
    unsigned long value_;
    unsigned long limit_;
};

}  // namespace permorder
