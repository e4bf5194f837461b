#include "cubecat/frobenius.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace cubecat {

AlgebraElement AlgebraElement::basis(int circles, std::uint32_t mask, long long coeff, int t_power) {
  AlgebraElement x(circles);
  x.add(mask, t_power, coeff);
  return x;
}

void AlgebraElement::add(std::uint32_t mask, int t_power, long long coeff) {
  if (coeff == 0) return;
  if (t_power < 0) throw std::invalid_argument("negative power of t");
  auto [it, inserted] = terms_.try_emplace(Key{mask, t_power}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  circles_ = std::max(circles_, other.circles_);
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-1); }

AlgebraElement AlgebraElement::scaled(long long k) const {
  AlgebraElement out(circles_);
  if (k == 0) return out;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * k);
  return out;
}

AlgebraElement AlgebraElement::at_t_zero() const {
  AlgebraElement out(circles_);
  for (const auto& [key, c] : terms_)
    if (key.second == 0) out.terms_.emplace(key, c);
  return out;
}

long long AlgebraElement::coefficient(std::uint32_t mask, int t_power) const {
  auto it = terms_.find(Key{mask, t_power});
  return it == terms_.end() ? 0 : it->second;
}

int AlgebraElement::degree(int circles, std::uint32_t mask, int t_power) {
  return circles - 2 * std::popcount(mask) - 4 * t_power;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const long long a = c < 0 ? -c : c;
    if (a != 1) out << a << '*';
    if (key.second > 0) out << "t" << (key.second > 1 ? "^" + std::to_string(key.second) : "") << '*';
    for (int i = 0; i < circles_; ++i) out << (i ? "(x)" : "") << (((key.first >> i) & 1u) ? 'X' : '1');
    first = false;
  }
  return out.str();
}

SignParams SignParams::from_index(int index) {
  SignParams p;
  for (int i = 0; i < 10; ++i) p.e[i] = ((index >> i) & 1) ? -1 : 1;
  return p;
}

int SignParams::index() const {
  int idx = 0;
  for (int i = 0; i < 10; ++i)
    if (e[i] < 0) idx |= 1 << i;
  return idx;
}

int sd(Generator g) {
  switch (g) {
    case Generator::Merge: return 0;
    case Generator::Split: return 1;
    case Generator::Birth: return 0;
    case Generator::Death: return 1;
  }
  return 0;
}

namespace {

AlgebraElement one_circle(long long c1, long long cx, long long cx_t = 0, long long c1_t = 0) {
  AlgebraElement x(1);
  x.add(0, 0, c1);
  x.add(1, 0, cx);
  x.add(1, 1, cx_t);
  x.add(0, 1, c1_t);
  return x;
}

// Two-circle element: coefficients of 1(x)1, X(x)1, 1(x)X, X(x)X, and t*1(x)1.
AlgebraElement two_circles(long long c11, long long cx1, long long c1x, long long cxx, long long t11 = 0) {
  AlgebraElement x(2);
  x.add(0, 0, c11);
  x.add(1, 0, cx1);
  x.add(2, 0, c1x);
  x.add(3, 0, cxx);
  x.add(0, 1, t11);
  return x;
}

// m_eps with eps = 0/1: 1(x)1 -> 1, 1(x)X -> X, X(x)1 -> (-1)^eps X, X(x)X -> (-1)^eps t.
std::array<AlgebraElement, 4> merge_eps(int sign) {
  return {one_circle(1, 0), one_circle(0, sign), one_circle(0, 1), one_circle(0, 0, 0, sign)};
}

// Delta_eps: 1 -> X(x)1 + (-1)^eps 1(x)X, X -> X(x)X + (-1)^eps t 1(x)1.
std::array<AlgebraElement, 2> split_eps(int sign) {
  return {two_circles(0, 1, sign, 0), two_circles(0, 0, 0, 1, sign)};
}

}  // namespace

FrobeniusSystem builtin_system(SystemKind kind) {
  FrobeniusSystem s;
  s.kind = kind;
  switch (kind) {
    case SystemKind::Khovanov:
      s.name = "kh";
      s.merge = {merge_eps(1), merge_eps(1)};
      s.split = {split_eps(1), split_eps(1)};
      break;
    case SystemKind::Nested:
      s.name = "nested";
      s.merge = {merge_eps(1), merge_eps(-1)};
      s.split = {split_eps(1), split_eps(-1)};
      break;
    case SystemKind::Odd: {
      s.name = "odd";
      s.exterior = true;
      const std::array<AlgebraElement, 4> m{one_circle(1, 0), one_circle(0, 1), one_circle(0, 1), one_circle(0, 0)};
      const std::array<AlgebraElement, 2> d{two_circles(0, 1, -1, 0), two_circles(0, 0, 0, 1)};
      s.merge = {m, m};
      s.split = {d, d};
      break;
    }
    case SystemKind::Parametrized:
      return parametrized_system(SignParams{}).system;
  }
  return s;
}

ParametrizedSystem parametrized_system(const SignParams& e) {
  ParametrizedSystem out;
  FrobeniusSystem& s = out.system;
  s.kind = SystemKind::Parametrized;
  s.params = e;
  s.name = "param#" + std::to_string(e.index());
  // Index order: 1(x)1, X(x)1, 1(x)X, X(x)X.
  s.merge[0] = {one_circle(e[1], 0), one_circle(0, e[2]), one_circle(0, e[2]), one_circle(0, 0)};
  s.split[0] = {two_circles(0, e[3], e[3], 0), two_circles(0, 0, 0, e[4])};
  // m_1, inner first: X_in(x)1 -> e7 X, 1(x)X_out -> e6 X.
  s.merge[1] = {one_circle(e[5], 0), one_circle(0, e[7]), one_circle(0, e[6]), one_circle(0, 0)};
  // Delta_1, outer first in the tables: e8 X_out(x)1_in + e9 1_out(x)X_in.
  s.split[1] = {two_circles(0, e[9], e[8], 0), two_circles(0, 0, 0, e[10])};

  ConstraintReport& c = out.constraints;
  c.e6_eq_e5 = e[6] == e[5];
  c.e9_eq_e10 = e[9] == e[10];
  c.e7e8_eq_e5e9 = e[7] * e[8] == e[5] * e[9];
  c.e1_eq_e2 = e[1] == e[2];
  c.e3_eq_e4 = e[3] == e[4];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Sign of the permutation sorting `v` ascending; 0 if `v` has duplicates.
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

std::vector<int> members(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::uint32_t to_mask(const std::vector<int>& v) {
  std::uint32_t m = 0;
  for (int c : v) m |= 1u << c;
  return m;
}

void check_index(int c, int n) {
  if (c < 0 || c >= n) throw std::out_of_range("circle index " + std::to_string(c) + " out of range");
}

// Image of an exterior monomial under the circle map, with its reordering sign.
std::pair<std::uint32_t, int> exterior_image(std::uint32_t mask, const std::vector<int>& to) {
  std::vector<int> img;
  for (int c : members(mask)) img.push_back(to[c]);
  const int sign = sort_sign(img);
  return {to_mask(img), sign};
}

}  // namespace

AlgebraElement apply_merge(const FrobeniusSystem& sys, bool nested, int first, int second,
                           const std::vector<int>& to, int result_size, const AlgebraElement& x) {
  const int n = static_cast<int>(to.size());
  check_index(first, n);
  check_index(second, n);
  if (first == second || to[first] != to[second]) throw std::invalid_argument("merge: malformed circle map");
  const int target = to[first];
  check_index(target, result_size);
  AlgebraElement out(result_size);
  const auto& table = sys.merge[nested ? 1 : 0];
  for (const auto& [key, coeff] : x.terms()) {
    const std::uint32_t mask = key.first;
    const int labels = static_cast<int>(((mask >> first) & 1u) | (((mask >> second) & 1u) << 1));
    if (sys.exterior) {
      // Identification a_first = a_second = a_target; the table agrees.
      auto [img, sign] = exterior_image(mask, to);
      if (sign == 0) continue;
      out.add(img, key.second, coeff * sign);
      continue;
    }
    std::uint32_t rest = 0;
    for (int c : members(mask))
      if (c != first && c != second) rest |= 1u << to[c];
    for (const auto& [tk, tc] : table[labels].terms()) {
      const std::uint32_t m = rest | ((tk.first & 1u) << target);
      out.add(m, key.second + tk.second, coeff * tc);
    }
  }
  return out;
}

AlgebraElement apply_split(const FrobeniusSystem& sys, bool nested, int source, int first_target,
                           int second_target, const std::vector<int>& to, int result_size,
                           const AlgebraElement& x) {
  const int n = static_cast<int>(to.size());
  check_index(source, n);
  check_index(first_target, result_size);
  check_index(second_target, result_size);
  if (to[source] != first_target || first_target == second_target)
    throw std::invalid_argument("split: malformed circle map");
  AlgebraElement out(result_size);
  const auto& table = sys.split[nested ? 1 : 0];
  for (const auto& [key, coeff] : x.terms()) {
    const std::uint32_t mask = key.first;
    if (sys.exterior) {
      // omega -> (a_first - a_second) ^ omega[source -> first].
      auto [img, sign] = exterior_image(mask, to);
      if (sign == 0) continue;
      for (auto [h, s] : {std::pair{first_target, 1}, std::pair{second_target, -1}}) {
        if ((img >> h) & 1u) continue;
        const int below = std::popcount(img & ((1u << h) - 1u));
        const int koszul = (below % 2) ? -1 : 1;
        out.add(img | (1u << h), key.second, coeff * sign * s * koszul);
      }
      continue;
    }
    const int label = static_cast<int>((mask >> source) & 1u);
    std::uint32_t rest = 0;
    for (int c : members(mask))
      if (c != source) rest |= 1u << to[c];
    for (const auto& [tk, tc] : table[label].terms()) {
      const std::uint32_t m = rest | ((tk.first & 1u) << first_target) | (((tk.first >> 1) & 1u) << second_target);
      out.add(m, key.second + tk.second, coeff * tc);
    }
  }
  return out;
}

AlgebraElement apply_counit(const FrobeniusSystem& sys, int circle, const AlgebraElement& x) {
  check_index(circle, x.circles());
  AlgebraElement out(x.circles());
  for (const auto& [key, coeff] : x.terms()) {
    const std::uint32_t mask = key.first;
    if (!((mask >> circle) & 1u)) continue;
    int sign = 1;
    if (sys.exterior && std::popcount(mask & ((1u << circle) - 1u)) % 2) sign = -1;
    out.add(mask & ~(1u << circle), key.second, coeff * sign);
  }
  return out;
}

AlgebraElement apply_permutation(const FrobeniusSystem& sys, const std::vector<int>& to, int result_size,
                                 const AlgebraElement& x) {
  AlgebraElement out(result_size);
  for (const auto& [key, coeff] : x.terms()) {
    auto [img, sign] = exterior_image(key.first, to);
    if (sign == 0) throw std::invalid_argument("permutation is not injective");
    out.add(img, key.second, coeff * (sys.exterior ? sign : 1));
  }
  return out;
}

AlgebraElement apply_edge_map(const FrobeniusSystem& sys, const SaddleData& s, int head_size,
                              const AlgebraElement& x) {
  std::vector<int> to = s.carried;
  if (s.kind == SaddleKind::Merge) {
    to[s.source_circles[0]] = s.target_circles[0];
    to[s.source_circles[1]] = s.target_circles[0];
    return apply_merge(sys, s.nested, s.source_circles[0], s.source_circles[1], to, head_size, x);
  }
  to[s.source_circles[0]] = s.target_circles[0];
  return apply_split(sys, s.nested, s.source_circles[0], s.target_circles[0], s.target_circles[1], to, head_size, x);
}

}  // namespace cubecat
