#include "cubecat/homology.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace cubecat {

// ---------------------------------------------------------------------------
// Dense Smith normal form

namespace {

DenseMatrix identity_dense(std::size_t n) {
  DenseMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct DenseSnf {
  DenseMatrix a;
  DenseMatrix* left = nullptr;
  DenseMatrix* right = nullptr;
  std::size_t n = 0, k = 0;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (left) std::swap((*left)[i], (*left)[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    if (right)
      for (auto& row : *right) std::swap(row[i], row[j]);
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < k; ++c)
      if (a[j][c] != 0) a[i][c] += q * a[j][c];
    if (left)
      for (std::size_t c = 0; c < n; ++c)
        if ((*left)[j][c] != 0) (*left)[i][c] += q * (*left)[j][c];
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t r = 0; r < n; ++r)
      if (a[r][j] != 0) a[r][i] += q * a[r][j];
    if (right)
      for (std::size_t r = 0; r < k; ++r)
        if ((*right)[r][j] != 0) (*right)[r][i] += q * (*right)[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (left)
      for (auto& x : (*left)[i]) x = -x;
  }

  // Smallest nonzero |entry| in the block [t.., t..]; false if the block is zero.
  bool min_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < k; ++j) {
        if (a[i][j] == 0) continue;
        const BigInt v = abs(a[i][j]);
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    return found;
  }

  std::vector<BigInt> run() {
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(n, k); ++t) {
      std::size_t pi = 0, pj = 0;
      if (!min_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (a[i][t] == 0) continue;
          add_row(i, t, -(a[i][t] / a[t][t]));
          if (a[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < k; ++j) {
          if (a[t][j] == 0) continue;
          add_col(j, t, -(a[t][j] / a[t][t]));
          if (a[t][j] != 0) dirty = true;
        }
        if (dirty) {
          // A remainder smaller than the pivot survived; move the smallest
          // entry of row/column t into the corner and repeat.
          std::size_t bi = t, bj = t;
          BigInt best = abs(a[t][t]);
          for (std::size_t i = t + 1; i < n; ++i)
            if (a[i][t] != 0 && abs(a[i][t]) < best) best = abs(a[i][t]), bi = i, bj = t;
          for (std::size_t j = t + 1; j < k; ++j)
            if (a[t][j] != 0 && abs(a[t][j]) < best) best = abs(a[t][j]), bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < n && divisible; ++i)
          for (std::size_t j = t + 1; j < k; ++j)
            if (a[i][j] % a[t][t] != 0) {
              add_row(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (a[t][t] < 0) negate_row(t);
      diag.push_back(a[t][t]);
    }
    return diag;
  }
};

}  // namespace

SNFResult smith_normal_form(const DenseMatrix& m, bool with_transforms) {
  SNFResult out;
  DenseSnf s;
  s.a = m;
  s.n = m.size();
  s.k = s.n ? m[0].size() : 0;
  for (const auto& row : m)
    if (row.size() != s.k) throw HomologyError("ragged matrix");
  DenseMatrix left, right;
  if (with_transforms) {
    left = identity_dense(s.n);
    right = identity_dense(s.k);
    s.left = &left;
    s.right = &right;
  }
  out.diagonal = s.run();
  if (with_transforms) {
    out.left = std::move(left);
    out.right = std::move(right);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparse elimination

namespace {

struct Overflow {};

long long checked_axpy(long long x, long long a, long long y) {  // x + a*y
  long long prod, sum;
  if (__builtin_mul_overflow(a, y, &prod) || __builtin_add_overflow(x, prod, &sum)) throw Overflow{};
  return sum;
}

// Row-major sparse matrix with a column -> rows index.
struct SparseRows {
  std::vector<std::map<int, long long>> rows;
  std::vector<std::set<int>> col_rows;

  explicit SparseRows(const SparseMatrix& m) : rows(m.rows()), col_rows(m.cols()) {
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c)) {
        rows[r][c] = v;
        col_rows[c].insert(r);
      }
  }

  void remove_row(int r) {
    for (const auto& [c, v] : rows[r]) col_rows[c].erase(r);
    rows[r].clear();
  }

  // row_dst := new contents (already computed); keeps the column index in sync.
  void replace_row(int r, std::map<int, long long> next) {
    for (const auto& [c, v] : rows[r])
      if (!next.count(c)) col_rows[c].erase(r);
    for (const auto& [c, v] : next) col_rows[c].insert(r);
    rows[r] = std::move(next);
  }

  // Column of minimum population among the entries of row r that satisfy pred.
  template <class Pred>
  int best_column(int r, Pred pred) const {
    int best = -1;
    std::size_t best_pop = 0;
    for (const auto& [c, v] : rows[r]) {
      if (!pred(v)) continue;
      const std::size_t pop = col_rows[c].size();
      if (best < 0 || pop < best_pop) best = c, best_pop = pop;
    }
    return best;
  }
};

}  // namespace

std::vector<BigInt> invariant_factors(const SparseMatrix& m) {
  SparseRows s(m);
  std::size_t units = 0;
  try {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int r = 0; r < static_cast<int>(s.rows.size()); ++r) {
        if (s.rows[r].empty()) continue;
        const int c = s.best_column(r, [](long long v) { return v == 1 || v == -1; });
        if (c < 0) continue;
        const long long u = s.rows[r].at(c);
        const std::vector<int> others(s.col_rows[c].begin(), s.col_rows[c].end());
        for (int r2 : others) {
          if (r2 == r) continue;
          const long long f = checked_axpy(0, -u, s.rows[r2].at(c));
          std::map<int, long long> next = s.rows[r2];
          for (const auto& [cc, v] : s.rows[r]) {
            const long long nv = checked_axpy(next.count(cc) ? next[cc] : 0, f, v);
            if (nv == 0) next.erase(cc);
            else next[cc] = nv;
          }
          s.replace_row(r2, std::move(next));
        }
        s.remove_row(r);
        ++units;
        progress = true;
      }
    }
  } catch (const Overflow&) {
    // Entries outgrew 64 bits; whatever is left goes to the exact dense routine.
  }

  std::vector<int> live_rows, live_cols;
  for (int r = 0; r < static_cast<int>(s.rows.size()); ++r)
    if (!s.rows[r].empty()) live_rows.push_back(r);
  for (int c = 0; c < static_cast<int>(s.col_rows.size()); ++c)
    if (!s.col_rows[c].empty()) live_cols.push_back(c);
  std::vector<BigInt> out(units, BigInt(1));
  if (!live_rows.empty()) {
    std::map<int, std::size_t> col_pos;
    for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
    DenseMatrix dense(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : s.rows[live_rows[i]]) dense[i][col_pos[c]] = v;
    const SNFResult rest = smith_normal_form(dense);
    out.insert(out.end(), rest.diagonal.begin(), rest.diagonal.end());
  }
  return out;
}

int rank_mod_p(const SparseMatrix& m, long long p) {
  if (p < 2) throw HomologyError("modulus must be a prime >= 2");
  auto mod = [p](long long v) {
    v %= p;
    return v < 0 ? v + p : v;
  };
  auto inverse = [p](long long a) {
    long long result = 1, base = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) result = static_cast<long long>(static_cast<__int128>(result) * base % p);
      base = static_cast<long long>(static_cast<__int128>(base) * base % p);
      e >>= 1;
    }
    return result;
  };
  SparseMatrix reduced(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    SparseMatrix::Column col;
    for (const auto& [r, v] : m.column(c))
      if (mod(v)) col.emplace_back(r, mod(v));
    reduced.set_column(c, std::move(col));
  }
  SparseRows s(reduced);
  int rank = 0;
  for (int r = 0; r < static_cast<int>(s.rows.size()); ++r) {
    if (s.rows[r].empty()) continue;
    const int c = s.best_column(r, [](long long) { return true; });
    const long long inv = inverse(s.rows[r].at(c));
    const std::vector<int> others(s.col_rows[c].begin(), s.col_rows[c].end());
    for (int r2 : others) {
      if (r2 == r) continue;
      const long long f = mod(-static_cast<long long>(static_cast<__int128>(s.rows[r2].at(c)) * inv % p));
      std::map<int, long long> next = s.rows[r2];
      for (const auto& [cc, v] : s.rows[r]) {
        const long long nv =
            static_cast<long long>((static_cast<__int128>(next.count(cc) ? next[cc] : 0) + static_cast<__int128>(f) * v) % p);
        if (nv == 0) next.erase(cc);
        else next[cc] = nv;
      }
      s.replace_row(r2, std::move(next));
    }
    s.remove_row(r);
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------

Coefficients Coefficients::parse(const std::string& s) {
  Coefficients c;
  if (s == "Z") return c;
  if (s == "Q") {
    c.ring = Ring::Q;
    return c;
  }
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f') &&
      std::all_of(s.begin() + 1, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) && s.size() < 12) {
    const long long p = std::stoll(s.substr(1));
    bool prime = p >= 2;
    for (long long d = 2; prime && d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) throw HomologyError("coefficient field F_p needs a prime p, got " + s);
    c.ring = Ring::Fp;
    c.p = p;
    return c;
  }
  throw HomologyError("unknown coefficient ring '" + s + "' (expected Z, Q or F<p>)");
}

std::string Coefficients::to_string() const {
  switch (ring) {
    case Ring::Z: return "Z";
    case Ring::Q: return "Q";
    case Ring::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

int HomologyTable::total_rank() const {
  int n = 0;
  for (const auto& [k, e] : entries) n += e.rank;
  return n;
}

namespace {

struct BlockResult {
  std::map<std::pair<int, int>, HomologyEntry> entries;
};

BlockResult homology_block(const ChainComplex& c, int j, Coefficients coeff) {
  const int slots = c.slots();
  std::vector<std::vector<int>> ids(slots);
  for (int k = 0; k < slots; ++k)
    for (std::size_t g = 0; g < c.qdeg[k].size(); ++g)
      if (c.qdeg[k][g] == j) ids[k].push_back(static_cast<int>(g));
  // rank and torsion of d_k restricted to degree j
  std::vector<int> rank(slots, 0);
  std::vector<std::vector<BigInt>> torsion(slots);
  for (int k = 0; k + 1 < slots; ++k) {
    if (ids[k].empty() || ids[k + 1].empty()) continue;
    const SparseMatrix block = c.d[k].restricted(ids[k + 1], ids[k]);
    if (block.is_zero()) continue;
    if (coeff.ring == Coefficients::Ring::Fp) {
      rank[k] = rank_mod_p(block, coeff.p);
    } else {
      const std::vector<BigInt> f = invariant_factors(block);
      rank[k] = static_cast<int>(f.size());
      for (const auto& x : f)
        if (x > 1) torsion[k].push_back(x);
    }
  }
  BlockResult out;
  for (int k = 0; k < slots; ++k) {
    HomologyEntry e;
    e.rank = static_cast<int>(ids[k].size()) - rank[k] - (k > 0 ? rank[k - 1] : 0);
    if (coeff.ring == Coefficients::Ring::Z && k > 0) e.torsion = torsion[k - 1];
    if (e.rank < 0) throw HomologyError("negative Betti number; complex is not a complex");
    if (e.rank > 0 || !e.torsion.empty()) out.entries[{c.min_degree + k, j}] = std::move(e);
  }
  return out;
}

}  // namespace

HomologyTable homology_table(const ChainComplex& c, Coefficients coeff, int jobs) {
  if (!d_squared_zero(c)) throw HomologyError("differential does not square to zero");
  std::set<int> js;
  for (const auto& q : c.qdeg) js.insert(q.begin(), q.end());
  const std::vector<int> jlist(js.begin(), js.end());
  std::vector<BlockResult> results(jlist.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(jlist.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jlist.size(); ++i) results[i] = homology_block(c, jlist[i], coeff);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < jlist.size(); i = next++) results[i] = homology_block(c, jlist[i], coeff);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  HomologyTable h;
  h.coefficients = coeff;
  for (auto& r : results) h.entries.merge(r.entries);
  return h;
}

LaurentPoly graded_euler_characteristic(const ChainComplex& c) {
  LaurentPoly p;
  for (int k = 0; k < c.slots(); ++k) {
    const int sign = ((c.min_degree + k) % 2 == 0) ? 1 : -1;
    for (int j : c.qdeg[k]) p[j] += sign;
  }
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

LaurentPoly graded_euler_characteristic(const HomologyTable& h) {
  LaurentPoly p;
  for (const auto& [ij, e] : h.entries) p[ij.second] += (ij.first % 2 == 0 ? 1 : -1) * e.rank;
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

LaurentPoly kauffman_bracket_oracle(const LinkDiagram& d) {
  const auto& xs = d.crossings();
  const int c = static_cast<int>(xs.size());
  const int labels = d.n_edges();
  // (q + 1/q)^n expanded once per circle count.
  std::vector<LaurentPoly> power(1, LaurentPoly{{0, 1}});
  LaurentPoly total;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
    std::vector<int> parent(labels + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int k = 0;
    for (int x = 0; x < c; ++x) {
      const auto& e = xs[x].edges;
      if ((s >> x) & 1u) {
        ++k;
        parent[find(e[0])] = find(e[3]);
        parent[find(e[1])] = find(e[2]);
      } else {
        parent[find(e[0])] = find(e[1]);
        parent[find(e[2])] = find(e[3]);
      }
    }
    std::set<int> roots;
    for (int x = 0; x < c; ++x)
      for (int e : xs[x].edges) roots.insert(find(e));
    const int circles = static_cast<int>(roots.size() + d.loops().size());
    while (static_cast<int>(power.size()) <= circles) {
      LaurentPoly next;
      for (const auto& [e, v] : power.back()) {
        next[e + 1] += v;
        next[e - 1] += v;
      }
      power.push_back(std::move(next));
    }
    const long long sign = (k % 2) ? -1 : 1;
    for (const auto& [e, v] : power[circles]) total[e + k] += sign * v;
  }
  LaurentPoly out;
  const long long sign = (d.c_minus() % 2) ? -1 : 1;
  const int shift = d.c_plus() - 2 * d.c_minus();
  for (const auto& [e, v] : total)
    if (v != 0) out[e + shift] = sign * v;
  return out;
}

std::string laurent_to_string(const LaurentPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto [e, v] = *it;
    if (v == 0) continue;
    out << (v < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const long long a = v < 0 ? -v : v;
    if (e == 0) {
      out << a;
    } else {
      if (a != 1) out << a << '*';
      out << 'q';
      if (e != 1) out << '^' << e;
    }
    first = false;
  }
  return out.str();
}

std::string homology_json(const HomologyTable& h, const LaurentPoly& euler) {
  nlohmann::json out;
  out["theory"] = h.theory;
  out["coefficients"] = h.coefficients.to_string();
  out["diagram"] = h.diagram;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [ij, e] : h.entries) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& x : e.torsion) {
      if (x <= BigInt(std::numeric_limits<long long>::max())) t.push_back(static_cast<long long>(x));
      else t.push_back(x.str());
    }
    entries.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", e.rank}, {"torsion", t}});
  }
  out["entries"] = std::move(entries);
  nlohmann::json eu = nlohmann::json::object();
  for (const auto& [e, v] : euler) eu[std::to_string(e)] = v;
  out["euler"] = std::move(eu);
  return out.dump(2);
}

std::string homology_pretty(const HomologyTable& h) {
  if (h.entries.empty()) return "(zero)\n";
  std::set<int> is, js;
  for (const auto& [ij, e] : h.entries) {
    is.insert(ij.first);
    js.insert(ij.second);
  }
  auto cell = [&](int i, int j) -> std::string {
    auto it = h.entries.find({i, j});
    if (it == h.entries.end()) return ".";
    std::string s;
    if (it->second.rank > 0) s = std::to_string(it->second.rank);
    for (const auto& t : it->second.torsion) s += (s.empty() ? "" : "+") + std::string("T") + t.str();
    return s;
  };
  std::size_t width = 4;
  for (int i = *is.begin(); i <= *is.rbegin(); ++i)
    for (int j : js) width = std::max(width, cell(i, j).size() + 1);
  std::ostringstream out;
  out << h.theory << " over " << h.coefficients.to_string() << "  (rows j, columns i; Tn = torsion Z/n)\n";
  out << std::setw(5) << "j\\i";
  for (int i = *is.begin(); i <= *is.rbegin(); ++i) out << std::setw(static_cast<int>(width)) << i;
  out << '\n';
  for (auto jt = js.rbegin(); jt != js.rend(); ++jt) {
    out << std::setw(5) << *jt;
    for (int i = *is.begin(); i <= *is.rbegin(); ++i) out << std::setw(static_cast<int>(width)) << cell(i, *jt);
    out << '\n';
  }
  return out.str();
}

}  // namespace cubecat
