#include "pautom/tree_action.hpp"

#include <stdexcept>

namespace pautom {

namespace {

void check_depth(int depth) {
  if (depth < 0 || depth > 30)
    throw std::invalid_argument("tree depth must be in [0, 30]");
}

}  // namespace

std::uint64_t word_to_index(std::span<const std::uint8_t> word) {
  std::uint64_t idx = 1;
  for (std::uint8_t b : word) {
    if (b != 1 && b != 2) throw std::invalid_argument("tree word letters must be 1 or 2");
    idx = 2 * idx - 1 + (b - 1);
  }
  return idx;
}

TreeWord index_to_word(std::uint64_t index, int level) {
  check_depth(level);
  if (index < 1 || index > (1ULL << level))
    throw std::invalid_argument("vertex index out of range for level");
  TreeWord w(level);
  std::uint64_t r = index - 1;
  for (int j = level - 1; j >= 0; --j) {
    w[j] = static_cast<std::uint8_t>(1 + (r & 1));
    r >>= 1;
  }
  return w;
}

PartialTreeAutomorphism::PartialTreeAutomorphism(int depth) : depth_(depth) {
  check_depth(depth);
  maps_.resize(depth + 1);
  for (int l = 0; l <= depth; ++l) maps_[l].assign(1ULL << l, 0);
}

std::uint64_t PartialTreeAutomorphism::image_index(const VertexId& v) const {
  return level_map(v.level).at(v.index - 1);
}

void PartialTreeAutomorphism::set_image(const VertexId& v, std::uint64_t target_index) {
  if (v.level < 0 || v.level > depth_)
    throw std::invalid_argument("vertex level out of range");
  if (target_index > maps_[v.level].size())
    throw std::invalid_argument("target index out of range for level");
  maps_[v.level].at(v.index - 1) = static_cast<std::uint32_t>(target_index);
}

const std::vector<std::uint32_t>& PartialTreeAutomorphism::level_map(int level) const {
  if (level < 0 || level > depth_)
    throw std::invalid_argument("vertex level out of range");
  return maps_[level];
}

std::uint64_t PartialTreeAutomorphism::domain_size() const {
  std::uint64_t n = 0;
  for (const auto& m : maps_)
    for (std::uint32_t v : m) n += v != 0;
  return n;
}

std::optional<std::string> PartialTreeAutomorphism::violation() const {
  if (maps_[0][0] != 0 && maps_[0][0] != 1) return "root does not map to the root";
  bool any_defined = false;
  for (const auto& m : maps_)
    for (std::uint32_t v : m) any_defined |= v != 0;
  if (any_defined && maps_[0][0] == 0) return "nonempty domain does not contain the root";
  for (int l = 1; l <= depth_; ++l) {
    const auto& cur = maps_[l];
    const auto& par = maps_[l - 1];
    std::vector<char> hit(cur.size(), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const std::uint32_t img = cur[i];
      if (img == 0) continue;
      if (img > cur.size())
        return "image index out of level range at level " + std::to_string(l);
      if (hit[img - 1]) return "level map not injective at level " + std::to_string(l);
      hit[img - 1] = 1;
      const std::uint32_t pimg = par[i >> 1];
      if (pimg == 0) return "domain not prefix-closed at level " + std::to_string(l);
      if (((img - 1) >> 1) != pimg - 1)
        return "image inconsistent with parent image at level " + std::to_string(l);
    }
  }
  return std::nullopt;
}

bool PartialTreeAutomorphism::operator==(const PartialTreeAutomorphism& o) const {
  return depth_ == o.depth_ && maps_ == o.maps_;
}

namespace {

// Writes the vertex images below one element node. src/dst are 0-based
// vertex offsets at tree level `lvl`; branch vertices live at lvl+1.
void unfold(const WreathElement& x, int lvl, std::uint64_t src, std::uint64_t dst,
            PartialTreeAutomorphism& out) {
  const I2Element& a = x.top();
  for (int b = 1; b <= 2; ++b) {
    if (!a.defined(b)) continue;
    const std::uint64_t s = 2 * src + (b - 1);
    const std::uint64_t d = 2 * dst + (a.image(b) - 1);
    out.set_image({lvl + 1, s + 1}, d + 1);
    if (x.level() >= 2) unfold(*x.child(b), lvl + 1, s, d, out);
  }
}

}  // namespace

PartialTreeAutomorphism to_tree_automorphism(const WreathElement& x) {
  PartialTreeAutomorphism out(x.level());
  if (x.top().domain_size() > 0) out.set_image({0, 1}, 1);
  unfold(x, 0, 0, 0, out);
  return out;
}

PartialTreeAutomorphism compose(const PartialTreeAutomorphism& x,
                                const PartialTreeAutomorphism& y) {
  if (x.depth() != y.depth())
    throw std::invalid_argument("compose: tree depth mismatch");
  PartialTreeAutomorphism out(x.depth());
  std::uint64_t below_root = 0;
  for (int l = 0; l <= x.depth(); ++l) {
    const auto& mx = x.level_map(l);
    const auto& my = y.level_map(l);
    for (std::size_t i = 0; i < mx.size(); ++i) {
      if (mx[i] == 0) continue;
      const std::uint32_t t = my[mx[i] - 1];
      if (t != 0) {
        out.set_image({l, i + 1}, t);
        below_root += l > 0;
      }
    }
  }
  // The root survives only together with some branch: a product that kills
  // every level-1 vertex is the zero element, whose domain is empty.
  if (below_root == 0 && x.depth() >= 1) out.set_image({0, 1}, 0);
  return out;
}

ActionMatrix::ActionMatrix(int depth, std::vector<std::uint32_t> row_images)
    : depth_(depth), rows_(std::move(row_images)) {
  check_depth(depth);
  if (rows_.size() != (1ULL << depth))
    throw std::invalid_argument("ActionMatrix: row count must be 2^depth");
  for (std::uint32_t r : rows_)
    if (r > rows_.size())
      throw std::invalid_argument("ActionMatrix: row image out of range");
}

std::uint64_t ActionMatrix::defined_rows() const {
  std::uint64_t n = 0;
  for (std::uint32_t r : rows_) n += r != 0;
  return n;
}

bool ActionMatrix::columns_injective() const {
  std::vector<char> hit(rows_.size(), 0);
  for (std::uint32_t r : rows_) {
    if (r == 0) continue;
    if (hit[r - 1]) return false;
    hit[r - 1] = 1;
  }
  return true;
}

std::vector<std::vector<int>> ActionMatrix::dense() const {
  std::vector<std::vector<int>> m(rows_.size(), std::vector<int>(rows_.size(), 0));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i] != 0) m[i][rows_[i] - 1] = 1;
  return m;
}

std::uint32_t leaf_action(const WreathElement& x, std::uint64_t leaf) {
  const TreeWord w = index_to_word(leaf, x.level());
  const WreathElement* cur = &x;
  std::uint64_t dst = 0;  // 0-based image prefix
  for (int j = 0; j < x.level(); ++j) {
    const int b = w[j];
    if (!cur->top().defined(b)) return 0;
    dst = 2 * dst + (cur->top().image(b) - 1);
    if (cur->level() >= 2) cur = cur->child(b);
  }
  return static_cast<std::uint32_t>(dst + 1);
}

namespace {

void fill_rows(const WreathElement& x, std::uint64_t src, std::uint64_t dst,
               std::vector<std::uint32_t>& rows) {
  const I2Element& a = x.top();
  for (int b = 1; b <= 2; ++b) {
    if (!a.defined(b)) continue;
    const std::uint64_t s = 2 * src + (b - 1);
    const std::uint64_t d = 2 * dst + (a.image(b) - 1);
    if (x.level() == 1)
      rows[s] = static_cast<std::uint32_t>(d + 1);
    else
      fill_rows(*x.child(b), s, d, rows);
  }
}

}  // namespace

std::vector<std::uint32_t> leaf_map(const WreathElement& x) {
  std::vector<std::uint32_t> rows(1ULL << x.level(), 0);
  fill_rows(x, 0, 0, rows);
  return rows;
}

ActionMatrix action_matrix(const WreathElement& x) {
  return ActionMatrix(x.level(), leaf_map(x));
}

ActionMatrix matrix_multiply(const ActionMatrix& a, const ActionMatrix& b) {
  if (a.depth() != b.depth())
    throw std::invalid_argument("matrix_multiply: depth mismatch");
  std::vector<std::uint32_t> rows(a.dim(), 0);
  for (std::uint64_t i = 1; i <= a.dim(); ++i) {
    const std::uint32_t j = a.row_image(i);
    if (j != 0) rows[i - 1] = b.row_image(j);
  }
  return ActionMatrix(a.depth(), std::move(rows));
}

}  // namespace pautom
