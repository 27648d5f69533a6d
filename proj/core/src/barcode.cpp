#include "annmat/barcode.hpp"

#include <algorithm>

namespace annmat {

void barcode::canonicalize() { std::sort(bars.begin(), bars.end()); }

void barcode::drop_empty() {
  std::erase_if(bars, [](const degree_bar& d) { return d.iv.empty(); });
}

bool barcode::same_bars(const barcode& other) const {
  auto a = bars, b = other.bars;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string to_string(const bar& b) {
  std::string s = "[" + std::to_string(b.birth) + ",";
  s += b.death == kInf ? "inf" : std::to_string(b.death);
  s += ")";
  return s;
}

std::string to_string(const barcode& bc) {
  std::string s;
  for (const auto& d : bc.bars) {
    s += std::to_string(d.degree) + " " + to_string(d.iv) + "\n";
  }
  return s;
}

}  // namespace annmat
