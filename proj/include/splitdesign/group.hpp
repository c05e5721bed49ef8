#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace splitdesign {

/// Cap on the number of elements any enumeration-based operation will touch.
inline constexpr long long kEnumerationCap = 1'000'000;

/// A finite abelian group presented as a direct product of cyclic groups
/// Z_{n_1} x ... x Z_{n_d}. The presentation is taken as given; no canonical
/// decomposition is attempted.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<long long> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw std::invalid_argument("AbelianGroup: no cyclic factors");
    order_ = 1;
    for (long long n : orders_) {
      if (n < 1) throw std::invalid_argument("AbelianGroup: factor order must be >= 1");
      if (order_ > (long long)4e18 / n) throw std::overflow_error("AbelianGroup: order overflow");
      order_ *= n;
    }
  }

  const std::vector<long long>& orders() const { return orders_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  long long order() const { return order_; }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.orders_ == b.orders_;
  }

 private:
  std::vector<long long> orders_;
  long long order_ = 1;
};

/// One residue per cyclic factor, each reduced into [0, n_i).
struct GroupElement {
  std::vector<long long> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

namespace detail {
inline void require_element(const AbelianGroup& g, const GroupElement& e) {
  if (static_cast<int>(e.coords.size()) != g.rank())
    throw std::invalid_argument("GroupElement: coordinate count does not match group rank");
}
}  // namespace detail

inline GroupElement group_zero(const AbelianGroup& g) {
  return GroupElement{std::vector<long long>(g.rank(), 0)};
}

/// Reduces arbitrary integer coordinates into canonical range.
inline GroupElement group_normalize(const AbelianGroup& g, GroupElement e) {
  detail::require_element(g, e);
  for (int i = 0; i < g.rank(); ++i) {
    long long n = g.orders()[i];
    e.coords[i] %= n;
    if (e.coords[i] < 0) e.coords[i] += n;
  }
  return e;
}

inline GroupElement group_add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  detail::require_element(g, a);
  detail::require_element(g, b);
  GroupElement out{std::vector<long long>(g.rank())};
  for (int i = 0; i < g.rank(); ++i) out.coords[i] = (a.coords[i] + b.coords[i]) % g.orders()[i];
  return out;
}

inline GroupElement group_negate(const AbelianGroup& g, const GroupElement& a) {
  detail::require_element(g, a);
  GroupElement out{std::vector<long long>(g.rank())};
  for (int i = 0; i < g.rank(); ++i)
    out.coords[i] = a.coords[i] == 0 ? 0 : g.orders()[i] - a.coords[i];
  return out;
}

inline GroupElement group_sub(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
  return group_add(g, a, group_negate(g, b));
}

/// Rank of an element in the lexicographic-by-coordinates enumeration.
/// This index is the stable point label used for developed designs.
inline long long element_index(const AbelianGroup& g, const GroupElement& e) {
  detail::require_element(g, e);
  long long idx = 0;
  for (int i = 0; i < g.rank(); ++i) {
    long long c = e.coords[i];
    if (c < 0 || c >= g.orders()[i]) throw std::invalid_argument("GroupElement: coordinate out of range");
    idx = idx * g.orders()[i] + c;
  }
  return idx;
}

inline GroupElement element_at(const AbelianGroup& g, long long index) {
  if (index < 0 || index >= g.order()) throw std::out_of_range("element_at: index out of range");
  GroupElement e{std::vector<long long>(g.rank())};
  for (int i = g.rank() - 1; i >= 0; --i) {
    e.coords[i] = index % g.orders()[i];
    index /= g.orders()[i];
  }
  return e;
}

/// All elements in lexicographic coordinate order; position i equals
/// element_index of the element at that position.
inline std::vector<GroupElement> enumerate_elements(const AbelianGroup& g,
                                                    long long cap = kEnumerationCap) {
  if (g.order() > cap) throw std::length_error("enumerate_elements: group order exceeds cap");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(g.order()));
  for (long long i = 0; i < g.order(); ++i) out.push_back(element_at(g, i));
  return out;
}

}  // namespace splitdesign
