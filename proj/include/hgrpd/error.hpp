#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgrpd {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong table sizes, ids out of range, unparsable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A structure that must satisfy its axioms does not.
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  NotNormal(std::uint32_t element, std::uint32_t conjugator, std::string what)
      : Error(std::move(what)), element(element), conjugator(conjugator) {}
  std::uint32_t element;
  std::uint32_t conjugator;
};

class NotFree : public Error {
 public:
  NotFree(std::uint32_t point, std::uint32_t element, std::string what)
      : Error(std::move(what)), point(point), element(element) {}
  std::uint32_t point;
  std::uint32_t element;
};

class NotEquivariant : public Error {
 public:
  NotEquivariant(bool on_object, std::uint32_t witness, std::string what)
      : Error(std::move(what)), on_object(on_object), witness(witness) {}
  bool on_object;
  std::uint32_t witness;
};

/// The index category is not filtered. `objects` is a pair with no common
/// cocone, `arrows` a parallel pair that nothing equalizes; both are empty
/// for the empty category.
class NotFiltered : public Error {
 public:
  NotFiltered(std::vector<std::uint32_t> objects, std::vector<std::uint32_t> arrows, std::string what)
      : Error(std::move(what)), objects(std::move(objects)), arrows(std::move(arrows)) {}
  std::vector<std::uint32_t> objects;
  std::vector<std::uint32_t> arrows;
};

}  // namespace hgrpd
