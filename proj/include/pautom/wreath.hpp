#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pautom/i2.hpp"
#include "pautom/numbers.hpp"

namespace pautom {

/// An element of the n-th partial wreath power of I2, i.e. a partial
/// automorphism of the n-level binary rooted tree in recursive coordinates.
///
/// A level-1 element is a bare I2Element. A level-n element is a pair of a
/// top I2Element `a` and one child of level n-1 for every branch in dom(a).
/// Values are immutable; children are shared.
class WreathElement {
 public:
  using Ptr = std::shared_ptr<const WreathElement>;

  // Level 1.
  explicit WreathElement(I2Element base);

  // Level >= 2. child1/child2 must be present exactly for the branches in
  // dom(top) and must have level - 1.
  WreathElement(int level, I2Element top, Ptr child1, Ptr child2);

  int level() const { return level_; }
  const I2Element& top() const { return top_; }

  /// Child below branch 1 or 2; nullptr when the branch is outside dom(top)
  /// or the element has level 1.
  const WreathElement* child(int branch) const { return child_ptr(branch).get(); }
  const Ptr& child_ptr(int branch) const;

  bool operator==(const WreathElement& o) const;
  bool operator!=(const WreathElement& o) const { return !(*this == o); }

  std::size_t hash() const { return hash_; }

 private:
  int level_;
  I2Element top_;
  Ptr children_[2];
  std::size_t hash_;

  void compute_hash();
};

struct WreathHash {
  std::size_t operator()(const WreathElement& x) const { return x.hash(); }
};

WreathElement identity(int level);
WreathElement empty(int level);

/// Diagrammatic composition, x acts first. Levels must match.
WreathElement compose(const WreathElement& x, const WreathElement& y);

WreathElement inverse(const WreathElement& x);

bool is_idempotent(const WreathElement& x);

/// Number of leaves of the n-level tree in the domain of x, computed by the
/// branch recursion rank(x) = sum of child ranks over dom(top).
std::uint64_t rank_leaf(const WreathElement& x);

/// Factorization x = e * s with e the idempotent restricted to dom(x) and s
/// an everywhere-defined element (a unit). Partial node bijections are
/// completed deterministically: defined images kept, undefined slots filled
/// in increasing order; branches outside the domain get identity subtrees.
struct IdempotentUnitDecomposition {
  WreathElement idempotent;
  WreathElement unit;
};
IdempotentUnitDecomposition decompose_idempotent_permutation(const WreathElement& x);

// --- counting ---------------------------------------------------------

/// 2^(2^(n+1)-1) - 1.
BigCount count_closed_form(int level);

/// Branch recursion: N_0 = 1, N_k = 1 + 4 N_{k-1} + 2 N_{k-1}^2.
BigCount count_recursive(int level);

/// Both routes, compared; throws std::logic_error if they ever disagree.
BigCount count_elements(int level);

// --- enumeration ------------------------------------------------------

inline constexpr int kDefaultEnumerationCap = 3;

class EnumerationCapError : public std::runtime_error {
 public:
  EnumerationCapError(int level, int cap, BigCount would_produce);
  int level() const { return level_; }
  const BigCount& would_produce() const { return would_produce_; }

 private:
  int level_;
  BigCount would_produce_;
};

/// Lazy stream over all elements of the given level, each exactly once, in
/// the canonical order: top I2Element major (canonical I2 order), then the
/// branch-1 child, then the branch-2 child.
class ElementStream {
 public:
  explicit ElementStream(int level);
  std::optional<WreathElement> next();

 private:
  WreathElement make_current(const I2Element& a) const;
  int level_;
  std::size_t a_idx_ = 0;
  bool started_ = false;
  std::unique_ptr<ElementStream> s1_, s2_;
  WreathElement::Ptr c1_, c2_;
};

/// Materializes the full semigroup. Refuses levels above `cap` (the count
/// explodes as 2^(2^(n+1))); the refusal carries the count it would have
/// produced.
std::vector<WreathElement> enumerate_all(int level, int cap = kDefaultEnumerationCap);

/// Cap check shared by the streaming consumers (CLI, tests).
void check_enumeration_cap(int level, int cap);

}  // namespace pautom
