#pragma once

#include <stdexcept>
#include <string>

namespace imcsim {

// Base class for all simulator errors so callers can catch the whole family.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Wordline/bitline drive combination with no defined hardware behavior.
class InvalidBias : public Error {
public:
    explicit InvalidBias(const std::string& what) : Error(what) {}
};

// Value outside the +1/-1 (logic 1/0) encoding domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Operand does not fit the declared bit width, or the width itself is unusable.
class WidthError : public Error {
public:
    explicit WidthError(const std::string& what) : Error(what) {}
};

// Dimension mismatch between an operand and the structure it feeds.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// Macro/architecture configuration that the hardware model cannot realize.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Out-of-range row/column/element index.
class IndexError : public Error {
public:
    explicit IndexError(const std::string& what) : Error(what) {}
};

// Calibration data absent or unusable for a calibrated quantity.
class MissingCalibration : public Error {
public:
    explicit MissingCalibration(const std::string& what) : Error(what) {}
};

// Use of a cell or macro whose contents were never written.
class StateError : public Error {
public:
    explicit StateError(const std::string& what) : Error(what) {}
};

// File missing, unreadable, or unparsable.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace imcsim
