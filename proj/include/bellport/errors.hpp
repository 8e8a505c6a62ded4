#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bellport {

/// Bad argument to a library operation (out-of-range index, wrong arity, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A precondition on a state was violated, e.g. measuring an unnormalized state.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Output sink failed. Carries how many data rows made it out before the failure.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::size_t rows_written)
        : std::runtime_error(what), rows_written_(rows_written) {}

    std::size_t rows_written() const noexcept { return rows_written_; }

private:
    std::size_t rows_written_;
};

} // namespace bellport
