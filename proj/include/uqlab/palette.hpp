#pragma once

// Named observables and states, plus the JSON matrix file format
// {"dim": d, "re": [[...]], "im": [[...]]}.

#include "uqlab/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace uqlab::palette {

/// Raised for unknown names or unreadable matrix files.
class PaletteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// sx, sy, sz, gm1..gm8, planar:<deg>,<deg> (two-qubit in-plane product),
/// kron:<name>,<name>, or a path to a JSON matrix file.
Observable observable(std::string_view name);

/// singlet, phi-plus, ghz, mixed:<d>, werner:<p>, bell-diagonal:<c1>,<c2>,<c3>,
/// bloch:<x>,<y>,<z>, or a path to a JSON matrix file.
DensityMatrix state(std::string_view name);

std::vector<std::string> observable_names();
std::vector<std::string> state_names();

ComplexMatrix gell_mann(int k);

ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const ComplexMatrix& m, const std::string& path);

}  // namespace uqlab::palette
