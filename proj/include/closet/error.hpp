#pragma once

#include <stdexcept>
#include <string>

namespace closet {

enum class ErrorKind {
    DegenerateConfiguration,
    DegenerateInput,
    DimensionMismatch,
    EmptyDisk,
    NoFoldFound,
    AmbiguousOrientation,
    MultiFoldUnpaired,
    CornerMismatch,
    InvalidPolygon,
    BadFoldLine,
    EmptyFold,
    OpenChain,
    TooSparse,
    InvalidFold,
    MalformedClose,
    UnsupportedMultiFold,
    PickOnFoldLine,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace closet
