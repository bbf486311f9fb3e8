#pragma once

#include <stdexcept>
#include <string>

namespace torsym {

// Error families aligned with the CLI exit-code contract:
// 2 parse, 3 semantic input, 4 action structure, 5 numeric failure.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ActionStructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace torsym
