#include "zdirac/error.hpp"

#include <sstream>

namespace zdirac {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::OrderExceeded: return "OrderExceeded";
    case ErrorKind::JetMismatch: return "JetMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::NonConstantExponent: return "NonConstantExponent";
    case ErrorKind::PoleAtC: return "PoleAtC";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::NodeEncountered: return "NodeEncountered";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

Error Error::with_location(double x) const {
  if (where_) return *this;
  std::ostringstream os;
  os << what() << " (at x = " << x << ")";
  Error e(kind_, "");
  static_cast<std::runtime_error&>(e) = std::runtime_error(os.str());
  e.where_ = x;
  e.offset_ = offset_;
  e.length_ = length_;
  return e;
}

Error Error::with_span(std::size_t offset, std::size_t length) const {
  std::ostringstream os;
  os << what() << " [expr bytes " << offset << ".." << offset + length << "]";
  Error e(kind_, "");
  static_cast<std::runtime_error&>(e) = std::runtime_error(os.str());
  e.where_ = where_;
  e.offset_ = offset;
  e.length_ = length;
  return e;
}

}  // namespace zdirac
