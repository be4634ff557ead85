#ifndef WEGNERLAB_TESTS_TEST_SUPPORT_HPP
#define WEGNERLAB_TESTS_TEST_SUPPORT_HPP

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "wegnerlab/geometry.hpp"
#include "wegnerlab/model.hpp"
#include "wegnerlab/rng.hpp"
#include "wegnerlab/symbol.hpp"

namespace wegnerlab::test {

/// d=1 coefficient field from (index, value) pairs.
inline CoefficientField field1d(
    std::initializer_list<std::pair<int, double>> entries) {
  std::map<LatticePoint, double> values;
  for (const auto& [k, v] : entries) values[{k}] = v;
  return CoefficientField(1, std::move(values));
}

/// d=2 coefficient field from ((k1, k2), value) triples.
inline CoefficientField field2d(
    std::initializer_list<std::pair<std::pair<int, int>, double>> entries) {
  std::map<LatticePoint, double> values;
  for (const auto& [k, v] : entries) values[{k.first, k.second}] = v;
  return CoefficientField(2, std::move(values));
}

/// Tensor product of two d=1 fields.
inline CoefficientField product_field(const CoefficientField& a,
                                      const CoefficientField& b) {
  std::map<LatticePoint, double> values;
  for (const auto& [ka, va] : a.values())
    for (const auto& [kb, vb] : b.values()) values[{ka[0], kb[0]}] = va * vb;
  return CoefficientField(2, std::move(values));
}

inline SingleSiteProfile profile1d(
    std::initializer_list<std::pair<int, double>> entries, double kappa) {
  std::map<LatticePoint, double> values;
  for (const auto& [k, v] : entries) values[{k}] = v;
  return SingleSiteProfile(1, std::move(values), kappa);
}

inline AndersonConfig basic_config(int dim, int l, CoefficientField alpha,
                                   SingleSiteProfile v, DensityBV f,
                                   Boundary boundary = Boundary::kTruncated) {
  return AndersonConfig{dim,
                        l,
                        boundary,
                        PeriodicPotential::zero(dim),
                        std::move(alpha),
                        std::move(v),
                        std::move(f),
                        0};
}

/// The l-site = 2l+1 chain fixture with no potential.
inline AndersonConfig chain_fixture(int l, Boundary boundary) {
  return basic_config(1, l, CoefficientField(1, {{{0}, 1.0}}),
                      SingleSiteProfile::delta(1), DensityBV::uniform(0.0, 1.0),
                      boundary);
}

inline std::vector<double> random_vector(Xoshiro256PlusPlus& rng,
                                         std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (auto& x : out) x = lo + (hi - lo) * rng.uniform();
  return out;
}

}  // namespace wegnerlab::test

#endif  // WEGNERLAB_TESTS_TEST_SUPPORT_HPP
