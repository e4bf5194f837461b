#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubecat/resolution.hpp"

namespace cubecat {

/// Element of A^{(x)n} (or of the exterior algebra on n circle generators for
/// the odd theory) with coefficients in Z[t].  A basis monomial is a bitmask
/// over circles (bit c set = X on circle c) together with a power of t.
class AlgebraElement {
 public:
  using Key = std::pair<std::uint32_t, int>;  // (mask, t power)

  AlgebraElement() = default;
  explicit AlgebraElement(int circles) : circles_(circles) {}
  static AlgebraElement basis(int circles, std::uint32_t mask, long long coeff = 1, int t_power = 0);

  int circles() const { return circles_; }
  const std::map<Key, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::uint32_t mask, int t_power, long long coeff);
  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement operator-() const;
  AlgebraElement scaled(long long k) const;
  /// Drop every term carrying a positive power of t.
  AlgebraElement at_t_zero() const;
  long long coefficient(std::uint32_t mask, int t_power = 0) const;

  bool operator==(const AlgebraElement& other) const { return terms_ == other.terms_; }

  /// Quantum degree of a monomial: deg(1)=+1, deg(X)=-1, deg(t)=-4.
  static int degree(int circles, std::uint32_t mask, int t_power);

  std::string to_string() const;

 private:
  int circles_ = 0;
  std::map<Key, long long> terms_;
};

enum class SystemKind { Khovanov, Nested, Odd, Parametrized };

/// e_1 .. e_10 in {+1, -1}; stored 0-based.
struct SignParams {
  std::array<int, 10> e{1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  int operator[](int one_based) const { return e[one_based - 1]; }
  static SignParams from_index(int index);  // bit i set -> e_{i+1} = -1
  int index() const;
};

/// Rank-2 system given by explicit tables.  Index conventions:
///  merge[n][labels]: labels bit0 = X on first factor, bit1 = X on second;
///  split[n][label]: result on two circles, bit0 = first factor, bit1 = second.
/// n = 1 selects the nested operation, whose first factor is the inner circle.
struct FrobeniusSystem {
  std::string name;
  SystemKind kind = SystemKind::Khovanov;
  /// Odd theory: the state module is the exterior algebra on circles.
  bool exterior = false;
  std::array<std::array<AlgebraElement, 4>, 2> merge;
  std::array<std::array<AlgebraElement, 2>, 2> split;
  std::optional<SignParams> params;
};

enum class Generator { Merge, Split, Birth, Death };

/// Parity grading of generators for the odd theory.
int sd(Generator g);

FrobeniusSystem builtin_system(SystemKind kind);

struct ConstraintReport {
  bool e6_eq_e5 = false;
  bool e9_eq_e10 = false;
  bool e7e8_eq_e5e9 = false;
  bool e1_eq_e2 = false;
  bool e3_eq_e4 = false;
  bool all() const { return e6_eq_e5 && e9_eq_e10 && e7e8_eq_e5e9 && e1_eq_e2 && e3_eq_e4; }
};

struct ParametrizedSystem {
  FrobeniusSystem system;
  ConstraintReport constraints;
};

/// Sign-decorated tables at t = 0.  The nested comultiplication is read with
/// its first factor on the outer circle: Delta_1(1) = e8 X_out(x)1_in + e9 1_out(x)X_in.
ParametrizedSystem parametrized_system(const SignParams& e);

// ---------------------------------------------------------------------------
// Operations on named circles.  `to` maps every source circle to its circle
// in the result (size = source circle count); the result has `result_size`
// circles.

AlgebraElement apply_merge(const FrobeniusSystem& sys, bool nested, int first, int second,
                           const std::vector<int>& to, int result_size, const AlgebraElement& x);
/// `to[source]` must equal `first_target`.
AlgebraElement apply_split(const FrobeniusSystem& sys, bool nested, int source, int first_target,
                           int second_target, const std::vector<int>& to, int result_size,
                           const AlgebraElement& x);
/// Counit on `circle`; the circle stays in the index space, unlabeled.
AlgebraElement apply_counit(const FrobeniusSystem& sys, int circle, const AlgebraElement& x);
/// Bijective relabeling (a permutation of tensor factors).
AlgebraElement apply_permutation(const FrobeniusSystem& sys, const std::vector<int>& to, int result_size,
                                 const AlgebraElement& x);

/// Edge map of a hypercube edge on an element of the tail state.
AlgebraElement apply_edge_map(const FrobeniusSystem& sys, const SaddleData& saddle, int head_size,
                              const AlgebraElement& x);

}  // namespace cubecat
