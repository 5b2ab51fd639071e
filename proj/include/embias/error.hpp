#pragma once

#include <stdexcept>
#include <string>

namespace embias {

/// Raised when input data violates a documented contract (bad file, empty
/// vocabulary, degenerate geometry). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace embias
