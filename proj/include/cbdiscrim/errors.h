#ifndef CBDISCRIM_ERRORS_H
#define CBDISCRIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace cbd {

/// Bad input: malformed shapes, non-finite numbers, invalid priors or specs.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix dimension would exceed the supported 8x8 limit.
class SizeError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// A numerical routine failed (non-convergence, non-finite objective, a closed
/// form evaluated outside its domain).
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace cbd

#endif
