#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace courtmc {

/// Set of state indices. Thin wrapper so callers never touch the bitset type directly.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n, bool all = false) : bits_(n) {
    if (all) bits_.set();
  }

  static StateSet singleton(std::size_t n, std::size_t index) {
    StateSet s(n);
    s.insert(index);
    return s;
  }

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(std::size_t i) const { return bits_.test(i); }
  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  StateSet& operator&=(const StateSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    bits_ -= o.bits_;
    return *this;
  }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  StateSet operator~() const {
    StateSet s;
    s.bits_ = ~bits_;
    return s;
  }
  bool is_subset_of(const StateSet& o) const { return bits_.is_subset_of(o.bits_); }
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.bits_ == b.bits_; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(i);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(i);
  }

 private:
  using Bits = boost::dynamic_bitset<>;
  Bits bits_;
};

}  // namespace courtmc
