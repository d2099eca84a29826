#pragma once

#include <stdexcept>
#include <string>

namespace lorval {

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

struct DegenerateSubspace : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lorval
