#pragma once

#include <stdexcept>
#include <string>

namespace qnetcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A compound channel was built from an empty list.
class EmptyCompound : public Error {
public:
    EmptyCompound() : Error("compound channel must contain at least one channel") {}
};

/// Channels of different families (qubit damping vs bosonic) were mixed.
class FamilyError : public Error {
public:
    using Error::Error;
};

/// Kraus operators do not form a trace-preserving map.
class KrausError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

/// Input exceeds the hard size limit of an exhaustive routine.
class SizeError : public Error {
public:
    using Error::Error;
};

/// The requested capacity lies outside the codomain of the bounding function.
class NotAttainable : public Error {
public:
    using Error::Error;
};

class MonotonicityError : public Error {
public:
    using Error::Error;
};

}  // namespace qnetcap
