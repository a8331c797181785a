// json_io.hpp — JSON encodings for operators and operator families:
// Operator {"dim": n, "entries": [[re, im], ...]} with row-major entries;
// frames/POVMs/duals {"dim": n, "kind": "...", "elements": [Operator, ...]}.

#pragma once

#include "infoframe/frames.hpp"

#include <iosfwd>
#include <string>

namespace infoframe {

std::string operator_to_json(const Matrix& op);
Matrix operator_from_json(const std::string& text);

std::string povm_to_json(const DiscretePovm& povm);
DiscretePovm povm_from_json(const std::string& text);

std::string dual_to_json(const DualFrame& dual);

Matrix load_operator(const std::string& path);
DiscretePovm load_povm(const std::string& path);

}  // namespace infoframe
