#pragma once

#include <stdexcept>
#include <string>

namespace pyroseason {

// Base for every library failure. Subclasses only exist where callers branch
// on the kind of failure (CLI exit codes, fallback paths in the pipeline).
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
public:
	using Error::Error;
};

class ParameterError : public Error {
public:
	using Error::Error;
};

class DomainError : public Error {
public:
	using Error::Error;
};

class SchemaError : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	using Error::Error;
};

class InsufficientData : public Error {
public:
	using Error::Error;
};

class FitError : public Error {
public:
	using Error::Error;
};

class FormatError : public Error {
public:
	using Error::Error;
};

} // namespace pyroseason
