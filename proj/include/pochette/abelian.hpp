#ifndef POCHETTE_ABELIAN_HPP
#define POCHETTE_ABELIAN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pochette/errors.hpp"
#include "pochette/presentation.hpp"

namespace pochette {

using Integer = std::int64_t;
/// Matrix entries; elimination transforms outgrow 64 bits on small inputs.
using BigInteger = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<BigInteger> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw Error("matrix entry count " + std::to_string(entries_.size()) +
                  " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<BigInteger> &entries() const noexcept { return entries_; }

  BigInteger &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInteger &operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  friend bool operator==(const IntegerMatrix &, const IntegerMatrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInteger> entries_;
};

/// Row-per-line debugging form.
inline std::string to_string(const IntegerMatrix &m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      out << (c ? " " : "") << m(r, c);
    out << "\n";
  }
  return out.str();
}

/// Default bound on the bit length of every intermediate entry.
inline constexpr std::size_t default_max_bits = 4096;

namespace detail {

inline std::size_t bit_length(const BigInteger &a) {
  return a == 0 ? 0 : boost::multiprecision::msb(boost::multiprecision::abs(a)) + 1;
}

inline void guard_bits(const BigInteger &a, std::size_t max_bits) {
  if (bit_length(a) > max_bits)
    throw OverflowGuard("integer entry exceeded " + std::to_string(max_bits) + " bits");
}

/// Narrows to 64 bits; OverflowGuard if the value does not fit.
inline Integer narrow(const BigInteger &a) {
  if (a > std::numeric_limits<Integer>::max() || a < std::numeric_limits<Integer>::min())
    throw OverflowGuard("value " + a.str() + " does not fit in 64 bits");
  return static_cast<Integer>(a);
}

inline Integer checked_mul(Integer a, Integer b) {
  Integer out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowGuard("64-bit overflow in product");
  return out;
}

inline Integer checked_add(Integer a, Integer b) {
  Integer out;
  if (__builtin_add_overflow(a, b, &out))
    throw OverflowGuard("64-bit overflow in sum");
  return out;
}

inline Integer abs_value(Integer a) { return a < 0 ? -a : a; }

} // namespace detail

inline IntegerMatrix multiply(const IntegerMatrix &a, const IntegerMatrix &b) {
  if (a.cols() != b.rows())
    throw Error("matrix dimension mismatch in product");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) += a(i, k) * b(k, j);
  return out;
}

struct SmithForm {
  IntegerMatrix diagonal; ///< S
  IntegerMatrix left;     ///< U, unimodular, rows x rows
  IntegerMatrix right;    ///< V, unimodular, cols x cols
};

namespace detail {

/// Elimination state with the transforms tracked alongside, so that
/// left * original * right == work holds after every operation.
class SmithReducer {
public:
  SmithReducer(const IntegerMatrix &m, std::size_t max_bits)
      : work_(m), left_(IntegerMatrix::identity(m.rows())),
        right_(IntegerMatrix::identity(m.cols())), max_bits_(max_bits) {
    for (const BigInteger &e : m.entries())
      guard_bits(e, max_bits_);
  }

  SmithForm run() {
    const std::size_t diag = std::min(work_.rows(), work_.cols());
    for (std::size_t t = 0; t < diag; ++t) {
      if (!reduce_corner(t))
        break;
    }
    return SmithForm{std::move(work_), std::move(left_), std::move(right_)};
  }

private:
  // Returns false once the remaining submatrix is zero.
  bool reduce_corner(std::size_t t) {
    while (true) {
      if (!move_min_pivot(t))
        return false;
      const BigInteger pivot = work_(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < work_.rows(); ++i) {
        if (work_(i, t) == 0)
          continue;
        add_row_multiple(i, t, -nearest_quotient(work_(i, t), pivot));
        if (work_(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < work_.cols(); ++j) {
        if (work_(t, j) == 0)
          continue;
        add_col_multiple(j, t, -nearest_quotient(work_(t, j), pivot));
        if (work_(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Row and column t are clear; enforce divisibility of the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < work_.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < work_.cols(); ++j)
          if (work_(i, j) % pivot != 0) {
            offender = i;
            break;
          }
      if (offender) {
        add_row_multiple(t, *offender, 1);
        continue;
      }
      if (pivot < 0)
        negate_row(t);
      return true;
    }
  }

  // Quotient rounded to nearest, leaving |remainder| <= |b| / 2.
  static BigInteger nearest_quotient(const BigInteger &a, const BigInteger &b) {
    BigInteger q = a / b;
    const BigInteger r = a - q * b;
    if (2 * boost::multiprecision::abs(r) > boost::multiprecision::abs(b))
      q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
  }

  // Moves the smallest nonzero |entry| of the trailing submatrix to (t, t);
  // ties go to the lowest row-major index.
  bool move_min_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInteger best_abs = 0;
    for (std::size_t i = t; i < work_.rows(); ++i)
      for (std::size_t j = t; j < work_.cols(); ++j) {
        if (work_(i, j) == 0)
          continue;
        BigInteger a = boost::multiprecision::abs(work_(i, j));
        if (!best || a < best_abs) {
          best = {i, j};
          best_abs = std::move(a);
        }
      }
    if (!best)
      return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < work_.cols(); ++j)
      std::swap(work_(a, j), work_(b, j));
    for (std::size_t j = 0; j < left_.cols(); ++j)
      std::swap(left_(a, j), left_(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < work_.rows(); ++i)
      std::swap(work_(i, a), work_(i, b));
    for (std::size_t i = 0; i < right_.rows(); ++i)
      std::swap(right_(i, a), right_(i, b));
  }

  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInteger &k) {
    for (std::size_t j = 0; j < work_.cols(); ++j)
      update(work_(dst, j), k, work_(src, j));
    for (std::size_t j = 0; j < left_.cols(); ++j)
      update(left_(dst, j), k, left_(src, j));
  }

  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInteger &k) {
    for (std::size_t i = 0; i < work_.rows(); ++i)
      update(work_(i, dst), k, work_(i, src));
    for (std::size_t i = 0; i < right_.rows(); ++i)
      update(right_(i, dst), k, right_(i, src));
  }

  void update(BigInteger &target, const BigInteger &k, const BigInteger &source) const {
    if (source == 0)
      return;
    target += k * source;
    guard_bits(target, max_bits_);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < work_.cols(); ++j)
      work_(r, j) = -work_(r, j);
    for (std::size_t j = 0; j < left_.cols(); ++j)
      left_(r, j) = -left_(r, j);
  }

  IntegerMatrix work_;
  IntegerMatrix left_;
  IntegerMatrix right_;
  std::size_t max_bits_;
};

} // namespace detail

/// Smith normal form: U * M * V == S with U, V unimodular and S diagonal,
/// nonnegative, with d1 | d2 | ... and zeros last. Exact in arbitrary
/// precision; throws OverflowGuard if an intermediate entry needs more than
/// `max_bits` bits.
inline SmithForm smith_normal_form(const IntegerMatrix &m,
                                   std::size_t max_bits = default_max_bits) {
  return detail::SmithReducer(m, max_bits).run();
}

/// Finitely generated abelian group Z^free_rank + Z/t1 + ... with t1 | t2 | ...
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  bool is_infinite_cyclic() const noexcept { return free_rank == 1 && torsion.empty(); }

  static AbelianInvariants free(std::size_t rank) { return {rank, {}}; }
  /// Z/n for n >= 0; n = 0 gives Z, n = 1 the trivial group.
  static AbelianInvariants cyclic(Integer n) {
    n = detail::abs_value(n);
    if (n == 0)
      return free(1);
    if (n == 1)
      return {};
    return {0, {n}};
  }

  friend bool operator==(const AbelianInvariants &, const AbelianInvariants &) = default;
};

/// "0", "Z", "Z^2", "Z/3", "Z/2 x Z/4 x Z^2".
inline std::string to_string(const AbelianInvariants &a) {
  if (a.is_trivial())
    return "0";
  std::string out;
  for (Integer t : a.torsion) {
    if (!out.empty())
      out += " x ";
    out += "Z/" + std::to_string(t);
  }
  if (a.free_rank > 0) {
    if (!out.empty())
      out += " x ";
    out += "Z";
    if (a.free_rank > 1)
      out += "^" + std::to_string(a.free_rank);
  }
  return out;
}

/// Rows = relators, columns = generators, entries = exponent sums.
inline IntegerMatrix relation_matrix(const FinitePresentation &p) {
  IntegerMatrix m(p.relators().size(), p.num_generators());
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (std::uint32_t g = 0; g < p.num_generators(); ++g)
      m(i, g) = exponent_sum(p.relators()[i], g);
  return m;
}

inline AbelianInvariants invariants_of_cokernel(const IntegerMatrix &m,
                                                std::size_t max_bits = default_max_bits) {
  const SmithForm snf = smith_normal_form(m, max_bits);
  AbelianInvariants out;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const BigInteger &d = snf.diagonal(i, i);
    if (d == 0)
      break;
    ++rank;
    if (d > 1)
      out.torsion.push_back(detail::narrow(d));
  }
  out.free_rank = m.cols() - rank;
  return out;
}

/// Abelianization of the presented group.
inline AbelianInvariants abelian_invariants(const FinitePresentation &p,
                                            std::size_t max_bits = default_max_bits) {
  return invariants_of_cokernel(relation_matrix(p), max_bits);
}

/// When the abelianization is Z, the images of the generators under the
/// abelianization map, signed so the first nonzero image is positive.
/// std::nullopt otherwise.
inline std::optional<std::vector<Integer>> hom_to_z(const FinitePresentation &p,
                                                    std::size_t max_bits = default_max_bits) {
  const IntegerMatrix m = relation_matrix(p);
  const SmithForm snf = smith_normal_form(m, max_bits);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const BigInteger &d = snf.diagonal(i, i);
    if (d == 0)
      break;
    if (d != 1)
      return std::nullopt;
    ++rank;
  }
  if (m.cols() != rank + 1)
    return std::nullopt;
  // Rows of M*V span the rows of S, so the coordinate of a relation vector
  // in the last column of V is always zero: that column is the map to Z,
  // determined up to sign and therefore small whatever V's other columns are.
  std::vector<Integer> images(m.cols());
  for (std::size_t g = 0; g < m.cols(); ++g)
    images[g] = detail::narrow(snf.right(g, rank));
  const auto first = std::find_if(images.begin(), images.end(),
                                  [](Integer v) { return v != 0; });
  if (first != images.end() && *first < 0)
    for (Integer &v : images)
      v = -v;
  return images;
}

/// Image of `w` under a homomorphism given by generator images.
inline Integer evaluate_abelian(const Word &w, const std::vector<Integer> &images) {
  Integer sum = 0;
  for (const Letter &l : w.letters())
    sum = detail::checked_add(sum, l.sign * images.at(l.generator));
  return sum;
}

} // namespace pochette

#endif
