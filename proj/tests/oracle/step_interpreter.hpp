#pragma once

// Second, deliberately naive implementation of the three perturbation
// methods. It shares no code with the engine: binary trees are stored as
// positions (parent position + side) carrying labels, n-ary trees as a parent
// array with insertion stamps. Used only to cross-check the engine.

#include <string>
#include <vector>

namespace oracle {

enum class Method { proceeding, ascend_descend, available_nodes };

/// Runs the method on the standard tree of size n and returns the bracket
/// string of the result (binary `id(left,right)`, n-ary `id[c c]`).
/// `values` uses the engine's storage: doubled half steps for the B*-tree
/// methods, (up, down) interleaved for ascend/descend.
std::string run(Method method, int n, const std::vector<int>& values);

/// Bracket string of the standard tree.
std::string standard(Method method, int n);

}  // namespace oracle
