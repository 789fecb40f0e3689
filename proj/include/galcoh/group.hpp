#pragma once

// Finite groups given by multiplication tables, and their subgroups with
// fixed left-coset representatives.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace galcoh {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Element 0 is always the identity.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity and inverses.
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::string name = {});

  /// Cyclic group of order m; element k is g^k, so the generator is index 1.
  static GroupPtr cyclic(std::size_t m);
  /// Closure of the given permutations (images of 0..degree-1), composed as
  /// (a*b)(x) = a(b(x)).
  static GroupPtr from_permutations(const std::vector<std::vector<std::size_t>>& generators,
                                    std::string name = {});
  static GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  std::size_t element_order(std::size_t a) const;
  const std::string& name() const { return name_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  /// A generating set, chosen greedily and fixed at construction.
  const std::vector<std::size_t>& generators() const { return generators_; }

  /// Words: for each element g, a path (parent, generator) from the
  /// identity in the Cayley graph; parent_[0] is unused.
  std::size_t word_parent(std::size_t g) const { return word_parent_[g]; }
  std::size_t word_generator(std::size_t g) const { return word_generator_[g]; }
  /// Elements in breadth-first order from the identity.
  const std::vector<std::size_t>& bfs_order() const { return bfs_order_; }

  bool is_abelian() const;
  /// Index of an element generating the group, or -1 if not cyclic.
  long cyclic_generator() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> word_parent_;
  std::vector<std::size_t> word_generator_;
  std::vector<std::size_t> bfs_order_;
  std::string name_;
};

bool same_group(const GroupPtr& a, const GroupPtr& b);

/// A subgroup H of a finite group G with chosen left-coset representatives
/// G = r_0 H + r_1 H + ..., r_0 = identity unless overridden.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<std::size_t> elements);

  static Subgroup generated_by(GroupPtr parent, const std::vector<std::size_t>& gens);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  /// Same subgroup, different coset representatives (validated).
  Subgroup with_representatives(std::vector<std::size_t> reps) const;

  const GroupPtr& parent() const { return parent_; }
  /// H as a standalone group; local index i corresponds to elements()[i].
  const GroupPtr& group() const { return local_; }
  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t to_parent(std::size_t local) const { return elements_[local]; }
  /// Local index of a parent element, or -1 when outside H.
  long to_local(std::size_t g) const { return local_index_[g]; }
  bool contains(std::size_t g) const { return local_index_[g] >= 0; }

  std::size_t index() const { return representatives_.size(); }
  const std::vector<std::size_t>& representatives() const { return representatives_; }
  /// Coset i with g in r_i H.
  std::size_t coset_of(std::size_t g) const { return coset_of_[g]; }

  /// For g in G and coset i: g r_i = r_{j} h with h in H; returns {j, h}
  /// with h as a parent element.
  std::pair<std::size_t, std::size_t> act_on_coset(std::size_t g, std::size_t i) const;

 private:
  void build_cosets();

  GroupPtr parent_;
  GroupPtr local_;
  std::vector<std::size_t> elements_;
  std::vector<long> local_index_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> coset_of_;
};

/// Every subgroup, each once, ordered by size then lexicographically.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

// A few named groups used by tests and the CLI.
GroupPtr symmetric_group_3();
GroupPtr dihedral_group(std::size_t n);  // order 2n
GroupPtr quaternion_group();
GroupPtr alternating_group_4();

}  // namespace galcoh
