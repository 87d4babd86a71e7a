#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gradecert::weyl {

using IntVec = std::vector<long long>;

enum class CartanType { A, B, C, D, E, F, G };

/// Irreducible finite root system, Bourbaki numbering. Weights are written in fundamental weight
/// coordinates, roots in simple root coordinates, coroots in simple coroot coordinates.
struct RootDatum {
  CartanType type = CartanType::A;
  std::size_t rank = 0;
  std::string name;
  /// cartan[i][j] = <alpha_i^vee, alpha_j>.
  std::vector<std::vector<long long>> cartan;
  /// (alpha_i, alpha_i) / 2, scaled to coprime integers.
  IntVec symmetrizer;
  /// Positive roots sorted by height; positive_coroots[k] is the coroot of positive_roots[k].
  std::vector<IntVec> positive_roots;
  std::vector<IntVec> positive_coroots;
  /// Row i: omega_i in simple root coordinates.
  std::vector<std::vector<mpq_class>> fundamental_weights;
  IntVec rho;
  std::size_t highest_root = 0;
  std::size_t highest_short_root = 0;
  int coxeter_number = 0;

  /// Positive root k in fundamental weight coordinates.
  IntVec root_weight(std::size_t k) const;
  /// <lambda, alpha_k^vee> for a weight in fundamental weight coordinates.
  long long pair_coroot(const IntVec& lambda, std::size_t k) const;
  bool is_long(std::size_t k) const;
  long long height(std::size_t k) const;
};

/// Throws InvalidArgument for impossible (type, rank) pairs.
RootDatum root_datum(CartanType type, std::size_t rank);
/// "A2", "B3", "G2", "E8", ...
RootDatum parse_root_datum(const std::string& name);

}  // namespace gradecert::weyl
