#pragma once

#include <stdexcept>
#include <string>

namespace sumdecomp {

// Base class for all library errors. Subcommands of the CLI map these to
// exit code 1; anything else is a usage or internal error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainViolation : public Error {
public:
    using Error::Error;
};

class NonFiniteElement : public Error {
public:
    using Error::Error;
};

class SizeMismatch : public Error {
public:
    using Error::Error;
};

class RootRecoveryFailure : public Error {
public:
    using Error::Error;
};

class OutOfImage : public Error {
public:
    using Error::Error;
};

class MalformedLatent : public Error {
public:
    using Error::Error;
};

class IndexOutOfUniverse : public Error {
public:
    using Error::Error;
};

class DuplicateIndex : public Error {
public:
    using Error::Error;
};

class NotInImage : public Error {
public:
    using Error::Error;
};

class ZeroInput : public Error {
public:
    using Error::Error;
};

class EmptySet : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class UnknownDistribution : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NumericalDivergence : public Error {
public:
    NumericalDivergence(const std::string& msg, int batch)
        : Error(msg), batch_index(batch) {}
    int batch_index;
};

class InsufficientGrid : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sumdecomp
