#include "ltlab/linalg.hpp"

#include <stdexcept>

namespace ltlab {

FqMatrix FqMatrix::identity(const FiniteField& k, std::size_t n) {
  FqMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = k.one();
  return m;
}

FqMatrix FqMatrix::diagonal(const std::vector<FqElem>& entries) {
  FqMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return m;
}

FqVector FqMatrix::column(std::size_t j) const {
  FqVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

bool FqMatrix::is_zero() const {
  for (const auto& e : data_)
    if (e != FqElem{}) return false;
  return true;
}

FqMatrix multiply(const FiniteField& k, const FqMatrix& a, const FqMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  FqMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (k.is_zero(a.at(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) = k.add(r.at(i, j), k.mul(a.at(i, l), b.at(l, j)));
    }
  return r;
}

FqVector multiply(const FiniteField& k, const FqMatrix& a, const FqVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  FqVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] = k.add(r[i], k.mul(a.at(i, j), v[j]));
  return r;
}

FqMatrix add(const FiniteField& k, const FqMatrix& a, const FqMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  FqMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = k.add(a.at(i, j), b.at(i, j));
  return r;
}

FqMatrix transpose(const FqMatrix& a) {
  FqMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

FqMatrix frobenius(const FiniteField& k, const FqMatrix& a) {
  FqMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = k.frobenius(a.at(i, j));
  return r;
}

FqMatrix frobenius_inverse(const FiniteField& k, const FqMatrix& a) {
  FqMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = k.frobenius_inverse(a.at(i, j));
  return r;
}

FqVector frobenius(const FiniteField& k, const FqVector& v) {
  FqVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = k.frobenius(v[i]);
  return r;
}

FqVector frobenius_inverse(const FiniteField& k, const FqVector& v) {
  FqVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = k.frobenius_inverse(v[i]);
  return r;
}

FqMatrix direct_sum(const FqMatrix& a, const FqMatrix& b) {
  FqMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return r;
}

FqVector unit_vector(const FiniteField& k, std::size_t n, std::size_t i) {
  FqVector v(n);
  v.at(i) = k.one();
  return v;
}

bool is_zero(const FqVector& v) {
  for (const auto& e : v)
    if (e != FqElem{}) return false;
  return true;
}

namespace {

// In-place reduced row echelon form; returns pivot columns. Zero rows dropped.
std::vector<std::size_t> rref(const FiniteField& k, std::vector<FqVector>& rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && k.is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    FqElem inv = k.inverse(rows[r][c]);
    for (auto& e : rows[r]) e = k.mul(e, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || k.is_zero(rows[i][c])) continue;
      FqElem f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::size_t rank(const FiniteField& k, std::vector<FqVector> vectors) {
  if (vectors.empty()) return 0;
  std::size_t n = vectors.front().size();
  return rref(k, vectors, n).size();
}

std::size_t rank(const FiniteField& k, const FqMatrix& m) {
  std::vector<FqVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return rank(k, std::move(cols));
}

Subspace Subspace::span(const FiniteField& k, std::size_t ambient_dim, std::vector<FqVector> vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw std::invalid_argument("vector has wrong dimension");
  Subspace s;
  s.ambient_ = ambient_dim;
  s.pivots_ = rref(k, vectors, ambient_dim);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::from_basis(const FiniteField& k, std::size_t ambient_dim, std::vector<FqVector> basis) {
  std::size_t count = basis.size();
  Subspace s = span(k, ambient_dim, std::move(basis));
  if (s.dim() != count) throw std::invalid_argument("basis vectors are linearly dependent");
  return s;
}

Subspace Subspace::column_space(const FiniteField& k, const FqMatrix& m) {
  std::vector<FqVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return span(k, m.rows(), std::move(cols));
}

bool Subspace::contains(const FiniteField& k, const FqVector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector has wrong dimension");
  FqVector w = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    FqElem f = w[pivots_[i]];
    if (k.is_zero(f)) continue;
    for (std::size_t j = 0; j < ambient_; ++j) w[j] = k.sub(w[j], k.mul(f, basis_[i][j]));
  }
  return is_zero(w);
}

bool Subspace::contains(const FiniteField& k, const Subspace& other) const {
  for (const auto& v : other.basis())
    if (!contains(k, v)) return false;
  return true;
}

std::size_t sum_dim(const FiniteField& k, const Subspace& a, const Subspace& b) {
  std::vector<FqVector> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return rank(k, std::move(all));
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned r) {
  if (r > n) return 0;
  // Product formula evaluated with exact integer division at every step.
  unsigned __int128 num = 1, den = 1;
  for (unsigned i = 0; i < r; ++i) {
    unsigned __int128 a = 1, b = 1;
    for (unsigned j = 0; j < n - i; ++j) a *= q;
    for (unsigned j = 0; j < i + 1; ++j) b *= q;
    num *= (a - 1);
    den *= (b - 1);
  }
  return static_cast<std::uint64_t>(num / den);
}

void enumerate_subspaces(const FiniteField& k, std::size_t n, std::size_t r,
                         const std::function<void(const Subspace&)>& visit) {
  if (r > n) return;
  const std::uint64_t q = k.residue_order();
  std::vector<std::size_t> piv(r);
  for (std::size_t i = 0; i < r; ++i) piv[i] = i;
  while (true) {
    // Free slots: row i, columns after piv[i] that are not pivots.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = piv[i] + 1; c < n; ++c) {
        bool is_piv = false;
        for (std::size_t j = 0; j < r; ++j) is_piv = is_piv || piv[j] == c;
        if (!is_piv) free.emplace_back(i, c);
      }
    std::vector<std::uint64_t> digits(free.size(), 0);
    while (true) {
      Subspace s;
      std::vector<FqVector> rows(r, FqVector(n));
      for (std::size_t i = 0; i < r; ++i) rows[i][piv[i]] = k.one();
      for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = k.element_at(digits[f]);
      visit(Subspace::span(k, n, std::move(rows)));
      std::size_t pos = free.size();
      while (pos > 0) {
        --pos;
        if (++digits[pos] < q) break;
        digits[pos] = 0;
        if (pos == 0) { pos = free.size() + 1; break; }
      }
      if (free.empty() || pos == free.size() + 1) break;
    }
    // Next pivot combination.
    std::size_t i = r;
    while (i > 0 && piv[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace ltlab
