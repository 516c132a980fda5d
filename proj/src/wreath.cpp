#include "pautom/wreath.hpp"

namespace pautom {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h += 0x9e3779b97f4a7c15ULL + v;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

void check_level(int level) {
  if (level < 1) throw std::invalid_argument("WreathElement: level must be >= 1");
}

}  // namespace

WreathElement::WreathElement(I2Element base) : level_(1), top_(base) { compute_hash(); }

WreathElement::WreathElement(int level, I2Element top, Ptr child1, Ptr child2)
    : level_(level), top_(top), children_{std::move(child1), std::move(child2)} {
  check_level(level);
  if (level == 1) {
    if (children_[0] || children_[1])
      throw std::invalid_argument("WreathElement: level-1 elements have no children");
  } else {
    for (int b = 1; b <= 2; ++b) {
      const Ptr& c = children_[b - 1];
      if (top_.defined(b) != static_cast<bool>(c))
        throw std::invalid_argument(
            "WreathElement: a child must exist exactly for each branch in dom(top)");
      if (c && c->level() != level - 1)
        throw std::invalid_argument("WreathElement: child level mismatch");
    }
  }
  compute_hash();
}

const WreathElement::Ptr& WreathElement::child_ptr(int branch) const {
  if (branch != 1 && branch != 2)
    throw std::invalid_argument("WreathElement: branch must be 1 or 2");
  return children_[branch - 1];
}

void WreathElement::compute_hash() {
  std::size_t h = mix(0x5eed, static_cast<std::size_t>(level_));
  h = mix(h, static_cast<std::size_t>(3 * top_.image(1) + top_.image(2)));
  for (const Ptr& c : children_) h = mix(h, c ? c->hash() : 0x7f);
  hash_ = h;
}

bool WreathElement::operator==(const WreathElement& o) const {
  if (this == &o) return true;
  if (level_ != o.level_ || hash_ != o.hash_ || top_ != o.top_) return false;
  for (int i = 0; i < 2; ++i) {
    const Ptr &a = children_[i], &b = o.children_[i];
    if (a == b) continue;
    if (!a || !b || !(*a == *b)) return false;
  }
  return true;
}

namespace {

WreathElement::Ptr identity_ptr(int level) {
  check_level(level);
  WreathElement::Ptr cur = std::make_shared<const WreathElement>(I2Element::identity());
  for (int k = 2; k <= level; ++k)
    cur = std::make_shared<const WreathElement>(k, I2Element::identity(), cur, cur);
  return cur;
}

WreathElement::Ptr compose_ptr(const WreathElement& x, const WreathElement& y) {
  const I2Element c = compose(x.top(), y.top());
  if (x.level() == 1) return std::make_shared<const WreathElement>(c);
  WreathElement::Ptr ch[2];
  for (int b = 1; b <= 2; ++b) {
    if (!c.defined(b)) continue;
    // b in dom(x.top) and x.top(b) in dom(y.top), so both children exist.
    ch[b - 1] = compose_ptr(*x.child(b), *y.child(x.top().image(b)));
  }
  return std::make_shared<const WreathElement>(x.level(), c, ch[0], ch[1]);
}

WreathElement::Ptr inverse_ptr(const WreathElement& x) {
  const I2Element inv = inverse(x.top());
  if (x.level() == 1) return std::make_shared<const WreathElement>(inv);
  WreathElement::Ptr ch[2];
  for (int b = 1; b <= 2; ++b) {
    if (!inv.defined(b)) continue;
    ch[b - 1] = inverse_ptr(*x.child(inv.image(b)));
  }
  return std::make_shared<const WreathElement>(x.level(), inv, ch[0], ch[1]);
}

}  // namespace

WreathElement identity(int level) { return *identity_ptr(level); }

WreathElement empty(int level) {
  check_level(level);
  if (level == 1) return WreathElement(I2Element::empty());
  return WreathElement(level, I2Element::empty(), nullptr, nullptr);
}

WreathElement compose(const WreathElement& x, const WreathElement& y) {
  if (x.level() != y.level())
    throw std::invalid_argument("compose: level mismatch");
  return *compose_ptr(x, y);
}

WreathElement inverse(const WreathElement& x) { return *inverse_ptr(x); }

bool is_idempotent(const WreathElement& x) { return compose(x, x) == x; }

std::uint64_t rank_leaf(const WreathElement& x) {
  if (x.level() == 1) return x.top().domain_size();
  std::uint64_t r = 0;
  for (int b = 1; b <= 2; ++b)
    if (x.top().defined(b)) r += rank_leaf(*x.child(b));
  return r;
}

namespace {

// Completes a partial bijection of {1,2}: defined images are kept, undefined
// sources take the unused targets in increasing order.
I2Element complete_i2(const I2Element& a) {
  std::uint8_t im[2] = {a.image(1), a.image(2)};
  bool used[3] = {false, false, false};
  if (im[0]) used[im[0]] = true;
  if (im[1]) used[im[1]] = true;
  for (int p = 0; p < 2; ++p) {
    if (im[p]) continue;
    for (std::uint8_t t = 1; t <= 2; ++t)
      if (!used[t]) {
        im[p] = t;
        used[t] = true;
        break;
      }
  }
  return I2Element::of(im[0], im[1]);
}

WreathElement::Ptr domain_idempotent_ptr(const WreathElement& x) {
  std::uint8_t d1 = x.top().defined(1) ? 1 : 0;
  std::uint8_t d2 = x.top().defined(2) ? 2 : 0;
  const I2Element e = I2Element::of(d1, d2);
  if (x.level() == 1) return std::make_shared<const WreathElement>(e);
  WreathElement::Ptr ch[2];
  for (int b = 1; b <= 2; ++b)
    if (e.defined(b)) ch[b - 1] = domain_idempotent_ptr(*x.child(b));
  return std::make_shared<const WreathElement>(x.level(), e, ch[0], ch[1]);
}

WreathElement::Ptr completion_ptr(const WreathElement& x,
                                  std::vector<WreathElement::Ptr>& id_cache) {
  const I2Element full = complete_i2(x.top());
  if (x.level() == 1) return std::make_shared<const WreathElement>(full);
  WreathElement::Ptr ch[2];
  for (int b = 1; b <= 2; ++b) {
    if (x.top().defined(b))
      ch[b - 1] = completion_ptr(*x.child(b), id_cache);
    else
      ch[b - 1] = id_cache[x.level() - 2];  // identity of level - 1
  }
  return std::make_shared<const WreathElement>(x.level(), full, ch[0], ch[1]);
}

}  // namespace

IdempotentUnitDecomposition decompose_idempotent_permutation(const WreathElement& x) {
  std::vector<WreathElement::Ptr> id_cache(x.level());
  id_cache[0] = std::make_shared<const WreathElement>(I2Element::identity());
  for (int k = 2; k < x.level(); ++k)
    id_cache[k - 1] = std::make_shared<const WreathElement>(
        k, I2Element::identity(), id_cache[k - 2], id_cache[k - 2]);
  return {*domain_idempotent_ptr(x), *completion_ptr(x, id_cache)};
}

BigCount count_closed_form(int level) {
  check_level(level);
  return pow2((1ULL << (level + 1)) - 1) - 1;
}

BigCount count_recursive(int level) {
  check_level(level);
  BigCount n = 1;  // level 0: only the empty tree map
  for (int k = 1; k <= level; ++k) n = 1 + 4 * n + 2 * n * n;
  return n;
}

BigCount count_elements(int level) {
  BigCount closed = count_closed_form(level);
  BigCount rec = count_recursive(level);
  if (closed != rec)
    throw std::logic_error("count_elements: closed form and recursion disagree");
  return closed;
}

EnumerationCapError::EnumerationCapError(int level, int cap, BigCount would_produce)
    : std::runtime_error("enumeration of level " + std::to_string(level) +
                         " refused (cap " + std::to_string(cap) + "): it would produce " +
                         would_produce.get_str() + " elements"),
      level_(level),
      would_produce_(std::move(would_produce)) {}

void check_enumeration_cap(int level, int cap) {
  check_level(level);
  if (level > cap) throw EnumerationCapError(level, cap, count_elements(level));
}

ElementStream::ElementStream(int level) : level_(level) { check_level(level); }

WreathElement ElementStream::make_current(const I2Element& a) const {
  return WreathElement(level_, a, c1_, c2_);
}

std::optional<WreathElement> ElementStream::next() {
  while (a_idx_ < I2Element::all().size()) {
    const I2Element a = I2Element::all()[a_idx_];
    if (level_ == 1) {
      ++a_idx_;
      return WreathElement(a);
    }
    if (!started_) {
      s1_.reset();
      s2_.reset();
      c1_.reset();
      c2_.reset();
      if (a.defined(1)) {
        s1_ = std::make_unique<ElementStream>(level_ - 1);
        c1_ = std::make_shared<const WreathElement>(*s1_->next());
      }
      if (a.defined(2)) {
        s2_ = std::make_unique<ElementStream>(level_ - 1);
        c2_ = std::make_shared<const WreathElement>(*s2_->next());
      }
      started_ = true;
      return make_current(a);
    }
    // Odometer step, branch-2 child least significant.
    if (a.defined(2)) {
      if (auto nx = s2_->next()) {
        c2_ = std::make_shared<const WreathElement>(*nx);
        return make_current(a);
      }
      if (a.defined(1)) {
        if (auto nx1 = s1_->next()) {
          c1_ = std::make_shared<const WreathElement>(*nx1);
          s2_ = std::make_unique<ElementStream>(level_ - 1);
          c2_ = std::make_shared<const WreathElement>(*s2_->next());
          return make_current(a);
        }
      }
    } else if (a.defined(1)) {
      if (auto nx1 = s1_->next()) {
        c1_ = std::make_shared<const WreathElement>(*nx1);
        return make_current(a);
      }
    }
    ++a_idx_;
    started_ = false;
  }
  return std::nullopt;
}

std::vector<WreathElement> enumerate_all(int level, int cap) {
  check_enumeration_cap(level, cap);
  std::vector<WreathElement> out;
  BigCount n = count_elements(level);
  out.reserve(n.get_ui());
  ElementStream stream(level);
  while (auto e = stream.next()) out.push_back(std::move(*e));
  return out;
}

}  // namespace pautom
