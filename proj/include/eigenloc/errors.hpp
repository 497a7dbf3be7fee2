#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eigenloc {

// Bad arguments or out-of-domain inputs. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that could not reach its target (quadrature limits,
// conditioning, empty cells). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public NumericalError {
 public:
  explicit QuadratureError(const std::string& what) : NumericalError(what) {}
};

// Some cover cell contains no admissible lattice direction.
class EmptyCellError : public NumericalError {
 public:
  EmptyCellError(const std::string& what, std::vector<int> cells)
      : NumericalError(what), empty_cells(std::move(cells)) {}
  std::vector<int> empty_cells;
};

}  // namespace eigenloc
