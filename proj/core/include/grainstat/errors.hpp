#pragma once

#include <stdexcept>
#include <string>

namespace grainstat {

// Invalid argument values (bad dimensions, probabilities out of range,
// parameters above an implementation cap).  The CLI maps this to exit code 2.
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data (image files, cache files).  Messages carry the source
// name and a byte offset where available.  The CLI maps this to exit code 3.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace grainstat
