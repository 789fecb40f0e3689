#include "galcoh/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "galcoh/errors.hpp"

namespace galcoh {

namespace {

std::vector<std::size_t> closure(const std::vector<std::vector<std::size_t>>& table,
                                 const std::vector<std::size_t>& gens) {
  std::vector<bool> in(table.size(), false);
  std::vector<std::size_t> out{0};
  in[0] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t s : gens) {
      const std::size_t x = table[out[k]][s];
      if (!in[x]) {
        in[x] = true;
        out.push_back(x);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InvalidInput("group must have at least one element");
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidInput("multiplication table is not square");
    for (std::size_t x : row)
      if (x >= n) throw InvalidInput("multiplication table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw InvalidInput("element 0 is not the identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InvalidInput("multiplication table is not associative");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inverse_[a] = b;
        break;
      }
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw InvalidInput("element without inverse");

  // Greedy generating set, elements of larger order first.
  std::vector<std::size_t> candidates(n);
  std::iota(candidates.begin(), candidates.end(), 0);
  std::vector<std::size_t> orders(n);
  for (std::size_t a = 0; a < n; ++a) orders[a] = element_order(a);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return orders[a] > orders[b]; });
  std::vector<std::size_t> span{0};
  for (std::size_t g : candidates) {
    if (span.size() == n) break;
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    generators_.push_back(g);
    span = closure(table_, generators_);
  }

  word_parent_.assign(n, 0);
  word_generator_.assign(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  bfs_order_.push_back(0);
  for (std::size_t k = 0; k < bfs_order_.size(); ++k) {
    const std::size_t g = bfs_order_[k];
    for (std::size_t s : generators_) {
      const std::size_t x = table_[g][s];
      if (!seen[x]) {
        seen[x] = true;
        word_parent_[x] = g;
        word_generator_[x] = s;
        bfs_order_.push_back(x);
      }
    }
  }
}

GroupPtr FiniteGroup::cyclic(std::size_t m) {
  if (m == 0) throw InvalidInput("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return std::make_shared<FiniteGroup>(std::move(t), "C" + std::to_string(m));
}

GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<std::size_t>>& generators,
                                        std::string name) {
  std::size_t degree = generators.empty() ? 0 : generators.front().size();
  for (const auto& p : generators) {
    if (p.size() != degree) throw InvalidInput("permutations of different degree");
    std::vector<std::size_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != i) throw InvalidInput("not a permutation");
  }
  using Perm = std::vector<std::size_t>;
  auto compose = [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, std::size_t> index{{id, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& s : generators) {
      Perm x = compose(elems[k], s);
      if (!index.count(x)) {
        index.emplace(x, elems.size());
        elems.push_back(std::move(x));
      }
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  return std::make_shared<FiniteGroup>(std::move(t), std::move(name));
}

GroupPtr FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return std::make_shared<FiniteGroup>(std::move(t), a.name() + "x" + b.name());
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  std::size_t r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

long FiniteGroup::cyclic_generator() const {
  for (std::size_t a = 0; a < order(); ++a)
    if (element_order(a) == order()) return static_cast<long>(a);
  return -1;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  const std::size_t n = parent_->order();
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty() || elements_.front() != 0)
    throw InvalidInput("subgroup must contain the identity");
  local_index_.assign(n, -1);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] >= n) throw InvalidInput("subgroup element out of range");
    local_index_[elements_[i]] = static_cast<long>(i);
  }
  const std::size_t m = elements_.size();
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const long x = local_index_[parent_->mul(elements_[a], elements_[b])];
      if (x < 0) throw InvalidInput("subset is not closed under multiplication");
      t[a][b] = static_cast<std::size_t>(x);
    }
  local_ = std::make_shared<FiniteGroup>(std::move(t), parent_->name() + "-sub");
  for (std::size_t g = 0; g < n; ++g) {
    bool covered = false;
    for (std::size_t r : representatives_)
      if (contains(parent_->mul(parent_->inverse(r), g))) covered = true;
    if (!covered) representatives_.push_back(g);
  }
  build_cosets();
}

void Subgroup::build_cosets() {
  const std::size_t n = parent_->order();
  coset_of_.assign(n, n);
  for (std::size_t i = 0; i < representatives_.size(); ++i)
    for (std::size_t h : elements_) {
      const std::size_t x = parent_->mul(representatives_[i], h);
      if (coset_of_[x] != n) throw InvalidInput("coset representatives overlap");
      coset_of_[x] = i;
    }
  for (std::size_t g = 0; g < n; ++g)
    if (coset_of_[g] == n) throw InvalidInput("coset representatives do not cover the group");
}

Subgroup Subgroup::generated_by(GroupPtr parent, const std::vector<std::size_t>& gens) {
  for (std::size_t g : gens)
    if (g >= parent->order()) throw InvalidInput("subgroup generator out of range");
  auto elems = closure(parent->table(), gens);
  return Subgroup(std::move(parent), std::move(elems));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<std::size_t> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}); }

Subgroup Subgroup::with_representatives(std::vector<std::size_t> reps) const {
  if (reps.size() != index()) throw InvalidInput("wrong number of coset representatives");
  for (std::size_t r : reps)
    if (r >= parent_->order()) throw InvalidInput("coset representative out of range");
  Subgroup s = *this;
  s.representatives_ = std::move(reps);
  s.build_cosets();
  return s;
}

std::pair<std::size_t, std::size_t> Subgroup::act_on_coset(std::size_t g, std::size_t i) const {
  const std::size_t x = parent_->mul(g, representatives_[i]);
  const std::size_t j = coset_of_[x];
  return {j, parent_->mul(parent_->inverse(representatives_[j]), x)};
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<std::size_t>> found{{0}};
  std::deque<std::vector<std::size_t>> queue{{0}};
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < g->order(); ++x) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      std::vector<std::size_t> gens = s;
      gens.push_back(x);
      auto c = closure(g->table(), gens);
      if (found.insert(c).second) queue.push_back(c);
    }
  }
  std::vector<std::vector<std::size_t>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  for (auto& e : sorted) out.emplace_back(g, std::move(e));
  return out;
}

GroupPtr symmetric_group_3() {
  return FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, "S3");
}

GroupPtr dihedral_group(std::size_t n) {
  std::vector<std::size_t> rot(n), ref(n);
  for (std::size_t x = 0; x < n; ++x) {
    rot[x] = (x + 1) % n;
    ref[x] = (n - x) % n;
  }
  return FiniteGroup::from_permutations({rot, ref}, "D" + std::to_string(n));
}

GroupPtr quaternion_group() {
  // Units 1,i,j,k with signs; element index = 2 * unit + (negative ? 1 : 0).
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto left = [&](std::size_t a) {
    std::vector<std::size_t> p(8);
    for (std::size_t b = 0; b < 8; ++b) {
      const std::size_t ua = a / 2, ub = b / 2;
      int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign_mul[ua][ub];
      p[b] = 2 * static_cast<std::size_t>(unit_mul[ua][ub]) + (sign < 0 ? 1 : 0);
    }
    return p;
  };
  return FiniteGroup::from_permutations({left(2), left(4)}, "Q8");
}

GroupPtr alternating_group_4() {
  return FiniteGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4");
}

}  // namespace galcoh
