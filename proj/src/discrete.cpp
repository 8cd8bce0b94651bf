#include <semrdc/discrete.hpp>

#include <cmath>
#include <stdexcept>

namespace semrdc {

void DiscreteJoint::validate() const {
  if (dims.empty()) throw std::invalid_argument("DiscreteJoint: empty dims");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("DiscreteJoint: dims must be >= 1");
    total *= static_cast<std::size_t>(d);
  }
  if (mass.size() != total)
    throw std::invalid_argument("DiscreteJoint: mass size does not match dims");
  double sum = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0))
      throw std::invalid_argument("DiscreteJoint: negative mass entry");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteJoint: total mass must be 1");
}

std::size_t DiscreteJoint::index(const std::vector<int>& coords) const {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < dims.size(); ++a)
    idx = idx * static_cast<std::size_t>(dims[a]) + static_cast<std::size_t>(coords[a]);
  return idx;
}

std::vector<double> DiscreteJoint::marginal_pair(int axis_a, int axis_b) const {
  const int na = dims[static_cast<std::size_t>(axis_a)];
  const int nb = dims[static_cast<std::size_t>(axis_b)];
  std::vector<double> table(static_cast<std::size_t>(na) * nb, 0.0);

  std::vector<int> coords(dims.size(), 0);
  for (std::size_t flat = 0; flat < mass.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = dims.size(); a-- > 0;) {
      coords[a] = static_cast<int>(rem % static_cast<std::size_t>(dims[a]));
      rem /= static_cast<std::size_t>(dims[a]);
    }
    table[static_cast<std::size_t>(coords[static_cast<std::size_t>(axis_a)]) * nb +
          static_cast<std::size_t>(coords[static_cast<std::size_t>(axis_b)])] += mass[flat];
  }
  return table;
}

double discrete_mutual_information(const DiscreteJoint& joint, int axis_a,
                                   int axis_b) {
  joint.validate();
  const int naxes = static_cast<int>(joint.dims.size());
  if (axis_a < 0 || axis_a >= naxes || axis_b < 0 || axis_b >= naxes ||
      axis_a == axis_b)
    throw std::invalid_argument(
        "discrete_mutual_information: axes must be distinct and in range");

  const int na = joint.dims[static_cast<std::size_t>(axis_a)];
  const int nb = joint.dims[static_cast<std::size_t>(axis_b)];
  const std::vector<double> pab = joint.marginal_pair(axis_a, axis_b);

  std::vector<double> pa(static_cast<std::size_t>(na), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(nb), 0.0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const double m = pab[static_cast<std::size_t>(i) * nb + j];
      pa[static_cast<std::size_t>(i)] += m;
      pb[static_cast<std::size_t>(j)] += m;
    }

  double mi = 0.0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const double m = pab[static_cast<std::size_t>(i) * nb + j];
      if (m > 0.0)
        mi += m * std::log2(m / (pa[static_cast<std::size_t>(i)] *
                                 pb[static_cast<std::size_t>(j)]));
    }
  return mi < 0.0 && mi > -1e-12 ? 0.0 : mi;
}

}  // namespace semrdc
