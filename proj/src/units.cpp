#include "eohom/units.hpp"

namespace eohom {

std::string to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

ParseError::ParseError(std::string source, int line, int column, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

SemanticError::SemanticError(std::string field, const std::string& what)
    : Error(field + ": " + what), field_(std::move(field)) {}

}  // namespace eohom
