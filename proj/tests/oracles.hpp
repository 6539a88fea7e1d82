// Independent reference implementations for the test suites. None of these
// call into the library's algorithms; they only read its data types.
#ifndef POCHETTE_TESTS_ORACLES_HPP
#define POCHETTE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "pochette/words.hpp"

namespace oracle {

using Int = std::int64_t;
using Wide = __int128;
using Matrix = std::vector<std::vector<Int>>;

inline Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Determinant by cofactor expansion along the first row.
inline Wide laplace_det(const Matrix &m) {
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return m[0][0];
  Wide det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0)
      continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Wide term = Wide(m[0][c]) * laplace_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> pick(k);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t at, std::size_t from) {
    if (at == k) {
      f(pick);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      pick[at] = i;
      go(at + 1, i + 1);
    }
  };
  go(0, 0);
}

/// Invariant factors from determinantal divisors: d_k = gcd of all k x k
/// minors, factor_k = d_k / d_{k-1}. Zeros pad to min(rows, cols).
inline std::vector<Int> invariant_factors_by_minors(const Matrix &m, std::size_t cols) {
  const std::size_t rows = m.size();
  const std::size_t n = std::min(rows, cols);
  std::vector<Int> out;
  Wide previous = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Wide d = 0;
    for_each_subset(rows, k, [&](const std::vector<std::size_t> &rs) {
      for_each_subset(cols, k, [&](const std::vector<std::size_t> &cs) {
        Matrix minor(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            minor[i][j] = m[rs[i]][cs[j]];
        d = wide_gcd(d, laplace_det(minor));
      });
    });
    if (d == 0) {
      out.resize(n, 0);
      return out;
    }
    out.push_back(static_cast<Int>(d / previous));
    previous = d;
  }
  return out;
}

/// Invariant factors by unoptimized elementary operations: clear the first
/// row and column of the remaining block by Euclidean steps on whatever entry
/// is found first, recurse, then repair divisibility with (a, b) -> (gcd, lcm)
/// on diagonal pairs.
inline std::vector<Int> invariant_factors_by_elimination(Matrix m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::vector<Wide>> a(rows, std::vector<Wide>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      a[r][c] = m[r][c];
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    bool found = false;
    for (std::size_t r = t; r < rows && !found; ++r)
      for (std::size_t c = t; c < cols && !found; ++c)
        if (a[r][c] != 0) {
          std::swap(a[t], a[r]);
          for (auto &row : a)
            std::swap(row[t], row[c]);
          found = true;
        }
    if (!found)
      break;
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        while (a[r][t] != 0) {
          const Wide q = a[r][t] / a[t][t];
          for (std::size_t c = t; c < cols; ++c)
            a[r][c] -= q * a[t][c];
          if (a[r][t] != 0) {
            std::swap(a[t], a[r]);
            dirty = true;
          }
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        while (a[t][c] != 0) {
          const Wide q = a[t][c] / a[t][t];
          for (std::size_t r = t; r < rows; ++r)
            a[r][c] -= q * a[r][t];
          if (a[t][c] != 0) {
            for (auto &row : a)
              std::swap(row[t], row[c]);
            dirty = true;
          }
        }
      }
    }
  }
  std::vector<Wide> diag(n);
  for (std::size_t i = 0; i < n; ++i)
    diag[i] = wide_abs(a[i][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (diag[i] == 0 && diag[j] != 0) {
        std::swap(diag[i], diag[j]);
      }
      if (diag[i] != 0 && diag[j] != 0 && diag[j] % diag[i] != 0) {
        const Wide g = wide_gcd(diag[i], diag[j]);
        const Wide l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
    }
  std::vector<Int> out;
  for (Wide d : diag)
    out.push_back(static_cast<Int>(d));
  return out;
}

/// Determinant of a small square library matrix, for unimodularity checks.
/// Bareiss elimination keeps entries integral; T is any exact integer type.
template <class T, class M> T det_of(const M &mat) {
  const std::size_t n = mat.rows();
  std::vector<std::vector<T>> a(n, std::vector<T>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a[r][c] = mat(r, c);
  T sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0)
      ++p;
    if (p == n)
      return T(0);
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  if (n == 0)
    return T(1);
  return T(sign * a[n - 1][n - 1]);
}

// ---------------------------------------------------------------------------
// Finite groups given concretely, closed under multiplication by brute force.

/// Permutation of {0..n-1}, composed left to right (apply a, then b).
using Perm = std::vector<int>;

inline Perm compose(const Perm &a, const Perm &b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = b[a[i]];
  return out;
}

inline Perm inverse(const Perm &a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[a[i]] = static_cast<int>(i);
  return out;
}

inline Perm identity(std::size_t n) {
  Perm out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

inline Perm evaluate(const pochette::Word &w, const std::vector<Perm> &gens) {
  Perm out = identity(gens.empty() ? 0 : gens[0].size());
  for (const auto &l : w.letters())
    out = compose(out, l.sign > 0 ? gens[l.generator] : inverse(gens[l.generator]));
  return out;
}

/// Closure of `gens` as a list of elements, with its full multiplication
/// table checked for closure (so the list really is a group).
struct ConcreteGroup {
  std::vector<Perm> elements;
  std::vector<std::vector<std::size_t>> table;
};

inline ConcreteGroup close_under_products(const std::vector<Perm> &gens) {
  ConcreteGroup g;
  std::map<Perm, std::size_t> index;
  const auto add = [&](const Perm &p) {
    if (index.emplace(p, g.elements.size()).second)
      g.elements.push_back(p);
  };
  add(identity(gens.at(0).size()));
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t before = g.elements.size();
    for (std::size_t i = 0; i < before; ++i)
      for (const Perm &s : gens)
        add(compose(g.elements[i], s));
    grew = g.elements.size() != before;
  }
  g.table.assign(g.elements.size(), std::vector<std::size_t>(g.elements.size()));
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
      const auto it = index.find(compose(g.elements[i], g.elements[j]));
      if (it == index.end())
        throw std::logic_error("closure is not a group");
      g.table[i][j] = it->second;
    }
  return g;
}

/// Cyclic group of order n, as integers mod n under addition.
inline std::size_t cyclic_order(std::size_t n) {
  std::set<std::size_t> seen{0};
  for (std::size_t x = 1 % n; x != 0; x = (x + 1) % n)
    seen.insert(x);
  return seen.size();
}

/// Every homomorphism to S_degree, by exhaustive enumeration of generator
/// images; calls `f` with the images of those satisfying all relators.
inline void for_each_permutation_rep(const std::vector<pochette::Word> &relators,
                                     std::size_t num_generators, std::size_t degree,
                                     const std::function<void(const std::vector<Perm> &)> &f) {
  std::vector<Perm> all;
  Perm p = identity(degree);
  do
    all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<Perm> images(num_generators);
  std::function<void(std::size_t)> go = [&](std::size_t g) {
    if (g == num_generators) {
      for (const auto &r : relators)
        if (evaluate(r, images) != identity(degree))
          return;
      f(images);
      return;
    }
    for (const Perm &candidate : all) {
      images[g] = candidate;
      go(g + 1);
    }
  };
  go(0);
}

/// A group is cyclic iff some element's powers exhaust it.
inline bool is_cyclic(const std::vector<Perm> &gens) {
  const ConcreteGroup g = close_under_products(gens);
  for (const Perm &e : g.elements) {
    std::size_t order = 1;
    for (Perm x = e; x != identity(e.size()); x = compose(x, e))
      ++order;
    if (order == g.elements.size())
      return true;
  }
  return false;
}

} // namespace oracle

#endif
