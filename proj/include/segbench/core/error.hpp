#pragma once

#include <stdexcept>
#include <string>

namespace segbench {

/// Raised when input data (files, ids, images) violates a documented contract.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace segbench
