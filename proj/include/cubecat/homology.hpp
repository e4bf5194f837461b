#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubecat/complex.hpp"
#include "cubecat/diagram.hpp"
#include "cubecat/linalg.hpp"

namespace cubecat {

using BigInt = boost::multiprecision::cpp_int;
using DenseMatrix = std::vector<std::vector<BigInt>>;

class HomologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SNFResult {
  /// Nonzero invariant factors d1 | d2 | ..., all positive.
  std::vector<BigInt> diagonal;
  /// L * M * R = D when transforms were requested.
  std::optional<DenseMatrix> left;
  std::optional<DenseMatrix> right;
};

SNFResult smith_normal_form(const DenseMatrix& m, bool with_transforms = false);
/// Invariant factors of a sparse integer matrix.  Unit pivots are removed by
/// sparse elimination first; the remainder goes through the dense routine.
std::vector<BigInt> invariant_factors(const SparseMatrix& m);
/// Rank over F_p (p prime, p < 2^31).
int rank_mod_p(const SparseMatrix& m, long long p);

struct Coefficients {
  enum class Ring { Z, Q, Fp } ring = Ring::Z;
  long long p = 0;
  static Coefficients parse(const std::string& s);  // "Z", "Q", "F2", "F3", ...
  std::string to_string() const;
};

struct HomologyEntry {
  int rank = 0;
  /// Over Z only; factors > 1 forming a divisibility chain.
  std::vector<BigInt> torsion;
  bool operator==(const HomologyEntry& o) const { return rank == o.rank && torsion == o.torsion; }
};

struct HomologyTable {
  std::string theory;
  Coefficients coefficients;
  std::string diagram;
  /// (i, j) -> entry; only nonzero entries are stored.
  std::map<std::pair<int, int>, HomologyEntry> entries;

  /// Compares entries only.
  bool same_groups(const HomologyTable& o) const { return entries == o.entries; }
  int total_rank() const;
};

using LaurentPoly = std::map<int, long long>;

/// `jobs` > 1 spreads quantum degrees over worker threads.
HomologyTable homology_table(const ChainComplex& c, Coefficients coeff, int jobs = 1);

/// Sum over generators of (-1)^i q^j.
LaurentPoly graded_euler_characteristic(const ChainComplex& c);
/// Sum over entries of (-1)^i rank q^j.
LaurentPoly graded_euler_characteristic(const HomologyTable& h);

/// Independent state sum; shares no code with the cube pipeline.
LaurentPoly kauffman_bracket_oracle(const LinkDiagram& d);

std::string laurent_to_string(const LaurentPoly& p);
std::string homology_json(const HomologyTable& h, const LaurentPoly& euler);
std::string homology_pretty(const HomologyTable& h);

}  // namespace cubecat
