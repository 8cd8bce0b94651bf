#pragma once

// Joint-law container for exhaustive enumeration over small product
// alphabets, plus exact mutual information by summation. Used by the oracle
// layer and by tests that cross-check the factored channel arithmetic.

#include <cstddef>
#include <vector>

namespace semrdc {

struct DiscreteJoint {
  std::vector<int> dims;      // alphabet size per axis
  std::vector<double> mass;   // row-major over the product alphabet

  // Throws std::invalid_argument unless all entries are >= 0, the shape
  // matches, and the total mass is 1 within 1e-12.
  void validate() const;

  std::size_t index(const std::vector<int>& coords) const;

  // Marginal over the ordered axis pair (a, b), a dims[a] x dims[b] table.
  std::vector<double> marginal_pair(int axis_a, int axis_b) const;
};

// I(A;B) in bits by direct summation, 0 log 0 = 0. Validates the joint.
double discrete_mutual_information(const DiscreteJoint& joint, int axis_a,
                                   int axis_b);

}  // namespace semrdc
