#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jarc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DegeneracyKind {
    Overlap,              // collinear overlapping segments
    VertexOnInterior,     // vertex of one curve in a segment interior of the other
    EndpointContact,      // a curve passes through an endpoint of an open arc
    CoincidentDirections  // two incident directions at a shared vertex coincide
};

inline const char* to_string(DegeneracyKind k) {
    switch (k) {
        case DegeneracyKind::Overlap: return "overlap";
        case DegeneracyKind::VertexOnInterior: return "vertex-on-interior";
        case DegeneracyKind::EndpointContact: return "endpoint-contact";
        case DegeneracyKind::CoincidentDirections: return "coincident-directions";
    }
    return "?";
}

struct DegeneracyError : Error {
    DegeneracyError(DegeneracyKind k, const std::string& what) : Error(what), kind(k) {}
    DegeneracyKind kind;
};

// Contact at an endpoint of an open arc.
struct EndpointError : DegeneracyError {
    explicit EndpointError(const std::string& what)
        : DegeneracyError(DegeneracyKind::EndpointContact, what) {}
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct OnCurveError : Error {
    using Error::Error;
};

struct ConstructionError : Error {
    using Error::Error;
};

struct GenerationError : Error {
    using Error::Error;
};

struct FitError : Error {
    using Error::Error;
};

// Parameters for which a computation has nothing meaningful to return.
struct DegenerateError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line_no, std::size_t byte_off, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ", byte " + std::to_string(byte_off) + ": " + msg),
          line(line_no),
          offset(byte_off) {}
    std::size_t line;
    std::size_t offset;
};

}  // namespace jarc
