#include "aot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "aot/errors.hpp"

namespace aot {

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  RationalMatrix m(dense.size(), dense.empty() ? 0 : dense[0].size());
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != m.cols_) throw domain_error("ragged dense matrix");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, dense[r][c]);
  }
  return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw domain_error("matrix index out of range");
  if (v == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void RationalMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw domain_error("matrix index out of range");
  if (v == 0) return;
  auto [it, inserted] = data_[r].try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) data_[r].erase(it);
  }
}

std::size_t RationalMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

std::vector<std::vector<Rational>> RationalMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw domain_error("vector length does not match matrix columns");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
  return out;
}

// ---------------------------------------------------------------------------
// Sparse elimination core

namespace {

template <class T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

template <class T>
const T* find_entry(const SparseRow<T>& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Gaussian elimination driver. `prepare` normalizes a pivot row,
// `eliminate` clears the pivot column from another row.
template <class T, class Prepare, class Eliminate>
std::size_t sparse_rank(std::vector<SparseRow<T>> rows, std::size_t cols, Prepare prepare, Eliminate eliminate) {
  std::vector<std::size_t> col_count(cols, 0);
  std::vector<std::vector<std::uint32_t>> col_rows(cols);
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) {
      ++col_count[c];
      col_rows[c].push_back(r);
    }
  std::vector<char> active(rows.size(), 1);
  std::size_t rank = 0;
  std::vector<std::uint32_t> before;
  while (true) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r]) continue;
      if (rows[r].empty()) {
        active[r] = 0;
        continue;
      }
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) break;

    // Markowitz: within the sparsest row, the column touching fewest rows.
    std::uint32_t pc = rows[best].front().first;
    for (const auto& [c, v] : rows[best])
      if (col_count[c] < col_count[pc]) pc = c;
    prepare(rows[best], pc);
    active[best] = 0;
    for (const auto& [c, v] : rows[best]) --col_count[c];

    std::vector<std::uint32_t> candidates = std::move(col_rows[pc]);
    col_rows[pc].clear();
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::uint32_t r : candidates) {
      if (!active[r] || !find_entry(rows[r], pc)) continue;
      before.clear();
      for (const auto& [c, v] : rows[r]) {
        before.push_back(c);
        --col_count[c];
      }
      eliminate(rows[r], rows[best], pc);
      for (const auto& [c, v] : rows[r]) {
        ++col_count[c];
        if (!std::binary_search(before.begin(), before.end(), c)) col_rows[c].push_back(r);
      }
    }
    ++rank;
  }
  return rank;
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  for (; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) result = mul_mod(result, a, p);
  return result;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

void make_primitive(SparseRow<BigInt>& row) {
  BigInt g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::size_t rank_exact(const RationalMatrix& m) {
  std::vector<SparseRow<BigInt>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    BigInt l = 1;
    for (const auto& [c, v] : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    SparseRow<BigInt> row;
    for (const auto& [c, v] : m.row(r)) row.push_back({static_cast<std::uint32_t>(c), BigInt(v.get_num() * (l / v.get_den()))});
    make_primitive(row);
    rows.push_back(std::move(row));
  }
  auto prepare = [](SparseRow<BigInt>&, std::uint32_t) {};
  auto eliminate = [](SparseRow<BigInt>& target, const SparseRow<BigInt>& pivot, std::uint32_t pc) {
    BigInt a = *find_entry(pivot, pc);
    BigInt b = *find_entry(target, pc);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    // target <- a * target - b * pivot
    SparseRow<BigInt> out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
        out.push_back({target[i].first, a * target[i].second});
        ++i;
      } else if (i == target.size() || pivot[j].first < target[i].first) {
        out.push_back({pivot[j].first, -b * pivot[j].second});
        ++j;
      } else {
        BigInt v = a * target[i].second - b * pivot[j].second;
        if (v != 0) out.push_back({target[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    make_primitive(out);
    target = std::move(out);
  };
  return sparse_rank(std::move(rows), m.cols(), prepare, eliminate);
}

std::optional<std::size_t> rank_modular(const RationalMatrix& m, std::uint32_t p) {
  std::vector<SparseRow<std::uint32_t>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow<std::uint32_t> row;
    for (const auto& [c, v] : m.row(r)) {
      const std::uint32_t den = mod_reduce(v.get_den(), p);
      if (den == 0) return std::nullopt;
      const std::uint32_t x = mul_mod(mod_reduce(v.get_num(), p), inv_mod(den, p), p);
      if (x != 0) row.push_back({static_cast<std::uint32_t>(c), x});
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  auto prepare = [p](SparseRow<std::uint32_t>& row, std::uint32_t pc) {
    const std::uint32_t inv = inv_mod(*find_entry(row, pc), p);
    for (auto& [c, v] : row) v = mul_mod(v, inv, p);
  };
  auto eliminate = [p](SparseRow<std::uint32_t>& target, const SparseRow<std::uint32_t>& pivot, std::uint32_t pc) {
    const std::uint32_t f = p - *find_entry(target, pc);  // target <- target - t_pc * pivot
    SparseRow<std::uint32_t> out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
        out.push_back(target[i++]);
      } else if (i == target.size() || pivot[j].first < target[i].first) {
        out.push_back({pivot[j].first, mul_mod(f, pivot[j].second, p)});
        ++j;
      } else {
        const std::uint32_t v = static_cast<std::uint32_t>((target[i].second + static_cast<std::uint64_t>(mul_mod(f, pivot[j].second, p))) % p);
        if (v != 0) out.push_back({target[i].first, v});
        ++i;
        ++j;
      }
    }
    target = std::move(out);
  };
  return sparse_rank(std::move(rows), m.cols(), prepare, eliminate);
}

// ---------------------------------------------------------------------------
// Dense RREF and kernels

std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> a, std::vector<std::size_t>* pivots) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && a[k][c] == 0) ++k;
    if (k == rows) continue;
    std::swap(a[r], a[k]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return a;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  auto reduced = rref(m.to_dense(), &pivots);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Parametric matrices

void LinearForm::add(std::size_t parameter, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(parameter, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Rational LinearForm::evaluate(const std::vector<Rational>& point) const {
  Rational v = constant;
  for (const auto& [k, c] : terms) v += c * point[k];
  return v;
}

ParamMatrix::ParamMatrix(std::size_t rows, std::size_t cols, std::size_t parameters)
    : rows_(rows), cols_(cols), parameters_(parameters) {}

void ParamMatrix::add(std::size_t r, std::size_t c, std::size_t parameter, const Rational& coeff) {
  if (r >= rows_ || c >= cols_ || parameter >= parameters_) throw domain_error("parametric entry out of range");
  LinearForm& f = entries_[{r, c}];
  f.add(parameter, coeff);
  if (f.is_zero()) entries_.erase({r, c});
}

void ParamMatrix::add_constant(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw domain_error("parametric entry out of range");
  LinearForm& f = entries_[{r, c}];
  f.constant += value;
  if (f.is_zero()) entries_.erase({r, c});
}

LinearForm ParamMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? LinearForm{} : it->second;
}

int ParamMatrix::entry_degree() const {
  for (const auto& [rc, f] : entries_)
    if (!f.terms.empty()) return 1;
  return 0;
}

RationalMatrix ParamMatrix::specialize(const std::vector<Rational>& point) const {
  if (point.size() != parameters_) throw domain_error("point has the wrong number of parameters");
  RationalMatrix m(rows_, cols_);
  for (const auto& [rc, f] : entries_) m.set(rc.first, rc.second, f.evaluate(point));
  return m;
}

std::vector<Rational> sample_point(std::size_t parameters, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<long> dist(1, kSampleRange);
  std::vector<Rational> point;
  for (std::size_t k = 0; k < parameters; ++k) point.emplace_back(dist(rng));
  return point;
}

GenericRank generic_rank(const ParamMatrix& m, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw domain_error("generic_rank needs at least one sample");
  GenericRank out;
  out.max_rank = std::min(m.rows(), m.cols());
  out.samples = samples;
  const int degree = m.entry_degree();
  const double d = static_cast<double>(out.max_rank) * degree;
  out.failure_bound = std::pow(std::min(1.0, d / kSampleRange), static_cast<double>(samples));
  if (out.max_rank == 0 || degree == 0) {
    std::vector<Rational> point(m.parameters());
    out.rank = out.max_rank == 0 ? 0 : rank_exact(m.specialize(point));
    out.witness = point;
    out.failure_bound = 0;
    out.certified = out.rank == out.max_rank;
    return out;
  }
  out.witness = sample_point(m.parameters(), seed, 0);
  bool have = false;
  for (std::size_t s = 0; s < samples; ++s) {
    auto point = sample_point(m.parameters(), seed, s);
    RationalMatrix spec = m.specialize(point);
    std::optional<std::size_t> r;
    for (std::size_t k = 0; k < std::size(kSamplePrimes) && !r; ++k)
      r = rank_modular(spec, kSamplePrimes[(s + k) % std::size(kSamplePrimes)]);
    const std::size_t rank = r ? *r : rank_exact(spec);
    if (!have || rank > out.rank) {
      out.rank = rank;
      out.witness = point;
      have = true;
    }
    if (out.rank == out.max_rank) {
      out.certified = true;
      out.failure_bound = 0;
      return out;
    }
  }
  // Every modular sample is deficient; a modular rank can undershoot, so
  // rank the first point over Q as well.
  auto point = sample_point(m.parameters(), seed, 0);
  const std::size_t exact = rank_exact(m.specialize(point));
  out.exact_sample = true;
  if (exact > out.rank) {
    out.rank = exact;
    out.witness = point;
  }
  if (out.rank == out.max_rank) {
    out.certified = true;
    out.failure_bound = 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Triplet dump

void write_triplets(std::ostream& out, const RationalMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out << r << ' ' << c << ' ' << to_string(v) << '\n';
}

RationalMatrix read_triplets(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw parse_error("missing matrix header", 0);
  RationalMatrix m(rows, cols);
  std::size_t r, c;
  std::string value;
  while (in >> r >> c >> value) m.set(r, c, parse_rational(value));
  return m;
}

}  // namespace aot
