#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pautom/wreath.hpp"

namespace pautom {

/// Vertex of the n-level binary rooted tree: (level, 1-based index within
/// the level). The root is {0, 1}.
struct VertexId {
  int level;
  std::uint64_t index;

  bool operator==(const VertexId& o) const { return level == o.level && index == o.index; }
};

/// A vertex as its branch word: letters in {1,2}, first letter = top-level
/// branch, empty word = root.
using TreeWord = std::vector<std::uint8_t>;

/// word b1..bl -> 1 + sum (bj - 1) 2^(l-j); lexicographic within a level.
std::uint64_t word_to_index(std::span<const std::uint8_t> word);
TreeWord index_to_word(std::uint64_t index, int level);

/// Explicit vertex map of a partial automorphism: per level, a table of
/// 1-based target indices with 0 for "not in the domain".
///
/// Valid maps are root-preserving, level-preserving, injective per level,
/// and have a prefix-closed domain whose vertex images are consistent with
/// the parent map. The fully undefined map (empty domain) is allowed.
class PartialTreeAutomorphism {
 public:
  explicit PartialTreeAutomorphism(int depth);

  int depth() const { return depth_; }

  std::uint64_t image_index(const VertexId& v) const;  // 0 = undefined
  bool defined(const VertexId& v) const { return image_index(v) != 0; }
  void set_image(const VertexId& v, std::uint64_t target_index);

  const std::vector<std::uint32_t>& level_map(int level) const;

  std::uint64_t domain_size() const;

  /// First violated invariant as text, or nullopt when the map is a valid
  /// partial automorphism.
  std::optional<std::string> violation() const;

  bool operator==(const PartialTreeAutomorphism& o) const;

 private:
  int depth_;
  std::vector<std::vector<std::uint32_t>> maps_;  // maps_[l][i], 0-based i
};

/// Unfolds the recursive coordinates into the explicit vertex map. The root
/// is in the domain exactly when dom(top) is nonempty; the image assignment
/// is a semigroup homomorphism.
PartialTreeAutomorphism to_tree_automorphism(const WreathElement& x);

/// Diagrammatic composition of vertex maps (left acts first). When the
/// product kills every level-1 vertex the root is dropped too: domains
/// never consist of the bare root, mirroring the zero element's empty
/// domain in the recursive coordinates.
PartialTreeAutomorphism compose(const PartialTreeAutomorphism& x,
                                const PartialTreeAutomorphism& y);

/// Leaf-level action in sparse row form: row i holds the 1-based image of
/// leaf i, or 0 when leaf i is outside the domain. This is the 0/1 action
/// matrix with at most one 1 per row and per column.
class ActionMatrix {
 public:
  ActionMatrix(int depth, std::vector<std::uint32_t> row_images);

  int depth() const { return depth_; }
  std::uint64_t dim() const { return rows_.size(); }

  /// 1-based leaf index in, 1-based image out; 0 = undefined.
  std::uint32_t row_image(std::uint64_t i) const { return rows_.at(i - 1); }
  const std::vector<std::uint32_t>& rows() const { return rows_; }

  std::uint64_t defined_rows() const;
  bool columns_injective() const;

  /// Full 0/1 matrix, for inspection and for the dense eigensolver.
  std::vector<std::vector<int>> dense() const;

  bool operator==(const ActionMatrix& o) const {
    return depth_ == o.depth_ && rows_ == o.rows_;
  }

 private:
  int depth_;
  std::vector<std::uint32_t> rows_;
};

/// Image of one leaf (1-based), walking one root-to-leaf path; 0 = undefined.
std::uint32_t leaf_action(const WreathElement& x, std::uint64_t leaf);

/// All 2^n rows at once.
std::vector<std::uint32_t> leaf_map(const WreathElement& x);

ActionMatrix action_matrix(const WreathElement& x);

/// Sparse product; equals the action matrix of the composed element.
ActionMatrix matrix_multiply(const ActionMatrix& a, const ActionMatrix& b);

}  // namespace pautom
