#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace finitude {

/// Permutation of {0..n-1} as an image table. Products act left to right:
/// (a * b)(x) = b(a(x)).
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
Perm perm_pow(const Perm& a, long e);
bool perm_is_identity(const Perm& a);
long perm_order(const Perm& a);
/// Cycle lengths including fixed points, sorted descending.
std::vector<int> perm_cycle_type(const Perm& a);
/// 1-based disjoint-cycle notation, "()" for the identity.
std::string perm_to_cycles(const Perm& a);
/// Parses 1-based cycle notation on n points; throws InvalidArgument.
Perm perm_from_cycles(const std::string& text, int n);

struct StabilizerChain;
struct ChainCache;

class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(int degree, std::vector<Perm> generators);

  static PermGroup symmetric(int n);
  static PermGroup alternating(int n);
  static PermGroup cyclic(int n);
  static PermGroup dihedral(int n);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  mpz_class order() const;
  bool contains(const Perm& g) const;
  bool is_trivial() const { return gens_.empty(); }
  bool is_abelian() const;
  bool is_subgroup_of(const PermGroup& g) const;
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;
  std::vector<int> base() const;
  PermGroup stabilizer(int point) const;
  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;
  /// Visits every element; stop early by returning false from the callback.
  void for_each_element(const std::function<bool(const Perm&)>& visit) const;
  /// Uniform random element from the stabilizer chain.
  Perm random_element(std::mt19937_64& rng) const;

 private:
  const StabilizerChain& chain() const;

  int degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<ChainCache> cache_;
};

/// Group order with the desk-scale guard; DegreeTooLarge above max_degree.
/// Action on a union of orbits, points relabeled 0..k-1 in the given order.
PermGroup restrict_group(const PermGroup& g, const std::vector<int>& points);

mpz_class group_order(const PermGroup& g, int max_degree = 32);

PermGroup normal_closure(const std::vector<Perm>& gens, const PermGroup& g);
PermGroup derived_subgroup(const PermGroup& g);
std::vector<PermGroup> derived_series(const PermGroup& g);
bool is_solvable(const PermGroup& g);

/// Finest block system with 0 and a in one block (blocks listed by least element).
std::vector<std::vector<int>> minimal_block_system(const PermGroup& g, int a);
/// Throws NotTransitive.
bool is_primitive(const PermGroup& g);

struct FullCycleSearch {
  enum class Status { Found, Absent, NotFoundWithinBudget };
  Status status = Status::Absent;
  Perm cycle;
  bool exhaustive = false;
};
FullCycleSearch find_full_cycle(const PermGroup& g, std::size_t enumeration_limit = 1000000,
                                std::size_t samples = 200000);
/// Throws SearchBudgetExceeded when the sampled search is inconclusive.
bool has_full_cycle(const PermGroup& g);

/// A composition factor: abelian ones are aggregated into a single entry
/// whose order is the product of their prime orders.
struct CompositionFactor {
  bool abelian = false;
  mpz_class order;
  int min_degree = 0;  // least degree of a faithful permutation action (simple factors)
  std::string name;
};

struct KSolvability {
  bool value = false;
  std::vector<CompositionFactor> witness;
  std::string reason;
};

/// Nonabelian composition factors with their minimal degrees, plus the
/// aggregated abelian part. Throws SearchBudgetExceeded when a primitive
/// section is too large to split.
std::vector<CompositionFactor> composition_factors(const PermGroup& g, std::size_t budget = 500000);

/// A normal chain with abelian quotients or quotients embeddable in S_k
/// exists iff every nonabelian composition factor acts faithfully on at most k points.
KSolvability is_k_solvable(const PermGroup& g, int k, std::size_t budget = 500000);

struct GroupPair {
  PermGroup group;
  PermGroup subgroup;
};

struct AlmostNormal {
  bool value = false;
  std::vector<Perm> conjugators;  // A with the intersection of a*H*a^-1 trivial
};

/// The pair (G, stabilizer of point 0).
GroupPair monodromy_pair(const PermGroup& g);
AlmostNormal is_almost_normal(const GroupPair& pair);

struct AffineClassification {
  enum class Kind { SizeFour, Affine };
  Kind kind = Kind::Affine;
  int p = 0;
  std::vector<int> label;                    // point -> element of F_p
  std::vector<std::pair<int, int>> maps;     // per generator: x -> a*x + b
};

/// Throws NotApplicable naming the failed hypothesis.
AffineClassification classify_primitive_solvable_with_cycle(const PermGroup& g);

}  // namespace finitude
