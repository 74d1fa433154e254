#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "aot/rational.hpp"

namespace aot {

/// Sparse matrix over Q, stored by rows. Zeros are never stored.
class RationalMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t r) const { return data_[r]; }
  Rational at(std::size_t r, std::size_t c) const;
  /// Stores v at (r, c); a zero erases the entry.
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  std::size_t nonzeros() const;

  std::vector<std::vector<Rational>> to_dense() const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// Rank over Q. Rows are cleared to primitive integer vectors and eliminated
/// fraction-free with content removal; pivots follow a Markowitz fill-in
/// heuristic.
std::size_t rank_exact(const RationalMatrix& m);

/// Rank of the reduction modulo p (p < 2^32 prime). nullopt when p divides a
/// denominator: retry with another prime. Never exceeds rank_exact.
std::optional<std::size_t> rank_modular(const RationalMatrix& m, std::uint32_t p);

/// Basis of the right null space, from the reduced row echelon form: one
/// vector per free column with a 1 in that column.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

/// Reduced row echelon form, dense. Handy for tests and small matrices.
std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> a, std::vector<std::size_t>* pivots = nullptr);

/// c + sum_k coeff_k a_k in parameters a_0 .. a_{d-1}.
struct LinearForm {
  Rational constant;
  std::map<std::size_t, Rational> terms;

  bool is_zero() const { return constant == 0 && terms.empty(); }
  void add(std::size_t parameter, const Rational& c);
  Rational evaluate(const std::vector<Rational>& point) const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Matrix whose entries are linear forms in the parameters of a generic
/// linear form l = sum a_e y_e.
class ParamMatrix {
 public:
  ParamMatrix(std::size_t rows, std::size_t cols, std::size_t parameters);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t parameters() const { return parameters_; }
  const std::map<std::pair<std::size_t, std::size_t>, LinearForm>& entries() const { return entries_; }
  void add(std::size_t r, std::size_t c, std::size_t parameter, const Rational& coeff);
  void add_constant(std::size_t r, std::size_t c, const Rational& value);
  LinearForm at(std::size_t r, std::size_t c) const;
  /// Total degree of the entries in the parameters: 0 or 1.
  int entry_degree() const;

  RationalMatrix specialize(const std::vector<Rational>& point) const;

 private:
  std::size_t rows_, cols_, parameters_;
  std::map<std::pair<std::size_t, std::size_t>, LinearForm> entries_;
};

struct GenericRank {
  std::size_t rank = 0;
  std::size_t max_rank = 0;     ///< min(rows, cols)
  bool certified = false;       ///< rank == max_rank, witnessed by a specialization
  double failure_bound = 0.0;   ///< Schwartz-Zippel bound on rank < generic rank
  std::size_t samples = 0;
  bool exact_sample = false;    ///< an exact rational elimination was needed
  std::vector<Rational> witness;  ///< point achieving the rank
};

/// The 31-bit primes used for modular samples.
inline constexpr std::uint32_t kSamplePrimes[] = {2147483647u, 2147483629u, 2147483587u};
inline constexpr std::uint32_t kSampleRange = 1u << 20;

/// Generic rank by random specialization at integer points in [1, 2^20].
/// Each sample is ranked modulo a 31-bit prime (cycling through
/// kSamplePrimes); a full rank ends the search. If every sample is deficient,
/// the first point is also ranked exactly.
GenericRank generic_rank(const ParamMatrix& m, std::size_t samples, std::uint64_t seed);

/// The i-th random point for a seed; reproducible and independent of the
/// number of samples requested.
std::vector<Rational> sample_point(std::size_t parameters, std::uint64_t seed, std::size_t index);

/// One "row col num/den" line per nonzero entry, after a "rows cols" header.
void write_triplets(std::ostream& out, const RationalMatrix& m);
RationalMatrix read_triplets(std::istream& in);

}  // namespace aot
