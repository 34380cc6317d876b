#include <algorithm>
#include <set>

#include "refl4/coxeter.hpp"

namespace refl4 {

std::vector<Word> braid_class(const Word& reduced, const CoxeterMatrix& m) {
  std::set<Word> seen{reduced};
  std::vector<Word> stack{reduced};
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const auto s = w[i], t = w[i + 1];
      if (s == t) continue;
      const int order = m.at(s, t);
      if (order == CoxeterMatrix::kInfinity || i + order > w.size()) continue;
      bool alternating = true;
      for (int k = 0; k < order && alternating; ++k) alternating = w[i + k] == (k % 2 == 0 ? s : t);
      if (!alternating) continue;
      Word moved = w;
      for (int k = 0; k < order; ++k) moved[i + k] = k % 2 == 0 ? t : s;
      if (seen.insert(moved).second) stack.push_back(std::move(moved));
    }
  }
  return {seen.begin(), seen.end()};
}

AbstractGrowth abstract_growth(const GroupPresentation& pres, std::size_t max_length, std::size_t element_cap) {
  const std::size_t n = pres.generator_count;
  const CoxeterMatrix& m = pres.coxeter_matrix;
  AbstractGrowth out;
  std::vector<Word> level{Word{}};
  out.normal_forms.push_back({});
  out.growth.push_back(1);
  for (std::size_t length = 1; length <= max_length && !out.truncated; ++length) {
    std::set<Word> next;
    for (const Word& w : level) {
      // s is a right descent of w iff some reduced word of w ends in s;
      // otherwise w·s is reduced of length |w| + 1.
      std::vector<char> descent(n, 0);
      for (const Word& v : braid_class(w, m))
        if (!v.empty()) descent[v.back()] = 1;
      for (std::size_t s = 0; s < n; ++s) {
        if (descent[s]) continue;
        Word ws = w;
        ws.push_back(static_cast<std::uint16_t>(s));
        next.insert(braid_class(ws, m).front());
      }
      if (out.normal_forms.size() + next.size() >= element_cap) {
        out.truncated = true;
        break;
      }
    }
    if (next.empty()) break;
    level.assign(next.begin(), next.end());
    out.growth.push_back(level.size());
    out.normal_forms.insert(out.normal_forms.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace refl4
