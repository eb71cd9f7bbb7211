#ifndef BNN_ERRORS_HPP
#define BNN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bnn {

// Shape disagreement between bit vectors, layers, masks or datasets.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Base for stream decoding failures (model files, IDX files).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class BadMagicError : public IoError {
public:
    explicit BadMagicError(const std::string& what) : IoError(what) {}
};

class TruncatedError : public IoError {
public:
    explicit TruncatedError(const std::string& what) : IoError(what) {}
};

class TrailingDataError : public IoError {
public:
    explicit TrailingDataError(const std::string& what) : IoError(what) {}
};

// Declared sizes that are zero, absurd, or would overflow an allocation.
class SizeError : public IoError {
public:
    explicit SizeError(const std::string& what) : IoError(what) {}
};

// A decoded value outside its legal range (e.g. a label byte >= 10).
class ValueError : public IoError {
public:
    explicit ValueError(const std::string& what) : IoError(what) {}
};

} // namespace bnn

#endif
