#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thzmol {

/// Argument outside the mathematical domain of an operation (negative distance, p > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Query outside the validity range of a model or table (no extrapolation).
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed catalog input. Carries the offending record and, for field errors, the field.
class ParseError : public std::runtime_error {
public:
    enum class Kind { WrongLength, BadField, InvalidValue };

    ParseError(Kind kind, std::size_t record_index, std::string field, std::size_t offset,
               const std::string& what)
        : std::runtime_error(what), kind_(kind), record_index_(record_index),
          field_(std::move(field)), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t record_index() const noexcept { return record_index_; }
    const std::string& field() const noexcept { return field_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t record_index_;
    std::string field_;
    std::size_t offset_;
};

/// A catalog or in-band line selection came out empty.
class NoLinesInBand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pulse or transfer-function grids that do not cover each other.
class GridMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thzmol
