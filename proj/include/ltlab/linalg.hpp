#pragma once

// Dense linear algebra over F_q: matrices, subspaces in reduced row echelon
// form, and exhaustive subspace enumeration.

#include <cstdint>
#include <functional>
#include <vector>

#include "ltlab/ring_core.hpp"

namespace ltlab {

using FqVector = std::vector<FqElem>;

class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static FqMatrix identity(const FiniteField& k, std::size_t n);
  static FqMatrix diagonal(const std::vector<FqElem>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FqElem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FqElem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  FqVector column(std::size_t j) const;
  bool is_zero() const;

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FqElem> data_;
};

FqMatrix multiply(const FiniteField& k, const FqMatrix& a, const FqMatrix& b);
FqVector multiply(const FiniteField& k, const FqMatrix& a, const FqVector& v);
FqMatrix add(const FiniteField& k, const FqMatrix& a, const FqMatrix& b);
FqMatrix transpose(const FqMatrix& a);
/// Entry-wise sigma (resp. sigma^-1).
FqMatrix frobenius(const FiniteField& k, const FqMatrix& a);
FqMatrix frobenius_inverse(const FiniteField& k, const FqMatrix& a);
FqVector frobenius(const FiniteField& k, const FqVector& v);
FqVector frobenius_inverse(const FiniteField& k, const FqVector& v);
/// Block diagonal sum.
FqMatrix direct_sum(const FqMatrix& a, const FqMatrix& b);

FqVector unit_vector(const FiniteField& k, std::size_t n, std::size_t i);
bool is_zero(const FqVector& v);

/// Rank of the span of the given vectors.
std::size_t rank(const FiniteField& k, std::vector<FqVector> vectors);
/// Rank of a matrix (column rank).
std::size_t rank(const FiniteField& k, const FqMatrix& m);

/// Subspace of k^n held as its reduced row echelon basis (unique per subspace).
class Subspace {
 public:
  Subspace() = default;
  /// Span of arbitrary vectors (dependent vectors allowed).
  static Subspace span(const FiniteField& k, std::size_t ambient_dim, std::vector<FqVector> vectors);
  /// Subspace from a basis; throws std::invalid_argument if the vectors are dependent.
  static Subspace from_basis(const FiniteField& k, std::size_t ambient_dim, std::vector<FqVector> basis);
  static Subspace column_space(const FiniteField& k, const FqMatrix& m);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FqVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const FiniteField& k, const FqVector& v) const;
  bool contains(const FiniteField& k, const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<FqVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// dim(a + b)
std::size_t sum_dim(const FiniteField& k, const Subspace& a, const Subspace& b);

/// Gaussian binomial (n choose r)_q.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned r);

/// Visits every r-dimensional subspace of k^n exactly once, in a fixed order
/// (pivot sets lexicographically, free entries in element-index order).
void enumerate_subspaces(const FiniteField& k, std::size_t n, std::size_t r,
                         const std::function<void(const Subspace&)>& visit);

}  // namespace ltlab
