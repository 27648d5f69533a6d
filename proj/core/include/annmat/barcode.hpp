#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace annmat {

// Grades are non-negative integers; kInf marks an open-ended interval.
using grade_t = int64_t;
inline constexpr grade_t kInf = std::numeric_limits<grade_t>::max();

// Half-open interval [birth, death). birth == death is a legal zero-length bar.
struct bar {
  grade_t birth = 0;
  grade_t death = kInf;

  bool empty() const { return death != kInf && death <= birth; }
  bool contains(grade_t i) const { return birth <= i && i < death; }
  bool operator==(const bar&) const = default;
  auto operator<=>(const bar&) const = default;
};

struct degree_bar {
  int degree = 0;
  bar iv;

  bool operator==(const degree_bar&) const = default;
  auto operator<=>(const degree_bar&) const = default;
};

// A multiset of bars tagged with a homological degree.
struct barcode {
  std::vector<degree_bar> bars;

  void add(int degree, bar iv) { bars.push_back({degree, iv}); }
  // sort by (degree, birth, death); this is the canonical output order
  void canonicalize();
  // remove zero-length bars
  void drop_empty();
  std::size_t size() const { return bars.size(); }

  // multiset equality (order-insensitive)
  bool same_bars(const barcode& other) const;
};

std::string to_string(const bar& b);
std::string to_string(const barcode& bc);

}  // namespace annmat
