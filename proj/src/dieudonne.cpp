#include "ltlab/dieudonne.hpp"

#include <stdexcept>

namespace ltlab {

std::string to_string(BlockLabel label) {
  switch (label) {
    case BlockLabel::Etale: return "etale";
    case BlockLabel::Multiplicative: return "multiplicative";
    case BlockLabel::LocalLocal: return "local-local";
  }
  return "?";
}

std::string to_string(RMKind kind) { return kind == RMKind::Split ? "split" : "inert"; }

FqVector DieudonneModule::apply_F(const FiniteField& k, const FqVector& v) const {
  return multiply(k, F_matrix, frobenius(k, v));
}

FqVector DieudonneModule::apply_V(const FiniteField& k, const FqVector& v) const {
  return multiply(k, V_matrix, frobenius_inverse(k, v));
}

DieudonneModule make_module(const FiniteField& k, FqMatrix F, FqMatrix V, std::vector<BlockLabel> labels) {
  const std::size_t n = F.rows();
  if (F.cols() != n || V.rows() != n || V.cols() != n) throw std::invalid_argument("F and V must be square of equal size");
  if (!labels.empty() && labels.size() != n) throw std::invalid_argument("one label per basis vector");
  if (!multiply(k, F, frobenius(k, V)).is_zero()) throw std::invalid_argument("FV != 0");
  if (!multiply(k, V, frobenius_inverse(k, F)).is_zero()) throw std::invalid_argument("VF != 0");
  DieudonneModule m;
  m.field = k.params();
  m.dim = n;
  m.F_matrix = std::move(F);
  m.V_matrix = std::move(V);
  m.labels = std::move(labels);
  return m;
}

DieudonneModule build_ordinary_module(const FiniteField& k, const FqElem& mu, const FqElem& chi) {
  if (k.is_zero(chi)) throw std::invalid_argument("chi must be invertible");
  FqMatrix F(4, 4), V(4, 4);
  F.at(0, 0) = k.one();
  F.at(0, 1) = mu;
  F.at(1, 1) = chi;
  V.at(2, 2) = k.one();
  V.at(3, 3) = k.one();
  return make_module(k, F, V,
                     {BlockLabel::Etale, BlockLabel::Etale, BlockLabel::Multiplicative, BlockLabel::Multiplicative});
}

DieudonneModule build_nonordinary_module(const FiniteField& k) {
  FqMatrix F(4, 4), V(4, 4);
  F.at(0, 1) = k.one();
  F.at(3, 3) = k.one();
  V.at(0, 1) = k.one();
  V.at(2, 2) = k.one();
  return make_module(k, F, V,
                     {BlockLabel::LocalLocal, BlockLabel::LocalLocal, BlockLabel::Multiplicative, BlockLabel::Etale});
}

DieudonneModule build_constant_module(const FiniteField& k, std::size_t r) {
  return make_module(k, FqMatrix::identity(k, r), FqMatrix(r, r), std::vector<BlockLabel>(r, BlockLabel::Etale));
}

DieudonneModule build_mu_module(const FiniteField& k, std::size_t r) {
  return make_module(k, FqMatrix(r, r), FqMatrix::identity(k, r),
                     std::vector<BlockLabel>(r, BlockLabel::Multiplicative));
}

bool is_etale(const FiniteField& k, const DieudonneModule& m) { return rank(k, m.F_matrix) == m.dim; }

bool is_connected(const FiniteField& k, const DieudonneModule& m) {
  // F^n = A sigma(A) ... sigma^{n-1}(A) sigma^n
  FqMatrix prod = FqMatrix::identity(k, m.dim);
  FqMatrix twisted = m.F_matrix;
  for (std::size_t i = 0; i < m.dim; ++i) {
    prod = multiply(k, prod, twisted);
    twisted = frobenius(k, twisted);
  }
  return prod.is_zero();
}

DieudonneModule dual(const FiniteField& k, const DieudonneModule& m) {
  std::vector<BlockLabel> labels;
  for (BlockLabel l : m.labels) {
    if (l == BlockLabel::Etale) labels.push_back(BlockLabel::Multiplicative);
    else if (l == BlockLabel::Multiplicative) labels.push_back(BlockLabel::Etale);
    else labels.push_back(l);
  }
  return make_module(k, transpose(frobenius(k, m.V_matrix)), transpose(frobenius_inverse(k, m.F_matrix)),
                     std::move(labels));
}

Subspace image_F(const FiniteField& k, const DieudonneModule& m) { return Subspace::column_space(k, m.F_matrix); }

Subspace image_V(const FiniteField& k, const DieudonneModule& m) { return Subspace::column_space(k, m.V_matrix); }

bool is_sub_dieudonne(const FiniteField& k, const DieudonneModule& m, const Subspace& s) {
  if (s.ambient_dim() != m.dim) throw std::invalid_argument("subspace lives in a different space");
  for (const auto& v : s.basis()) {
    if (!s.contains(k, m.apply_F(k, v))) return false;
    if (!s.contains(k, m.apply_V(k, v))) return false;
  }
  return true;
}

DieudonneModule restrict_to_coordinates(const FiniteField& k, const DieudonneModule& m,
                                        const std::vector<std::size_t>& indices) {
  std::vector<bool> inside(m.dim, false);
  for (std::size_t i : indices) inside.at(i) = true;
  for (std::size_t j : indices)
    for (std::size_t i = 0; i < m.dim; ++i)
      if (!inside[i] && (!k.is_zero(m.F_matrix.at(i, j)) || !k.is_zero(m.V_matrix.at(i, j))))
        throw std::invalid_argument("coordinate block is not F,V-stable");
  const std::size_t r = indices.size();
  FqMatrix F(r, r), V(r, r);
  std::vector<BlockLabel> labels;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      F.at(a, b) = m.F_matrix.at(indices[a], indices[b]);
      V.at(a, b) = m.V_matrix.at(indices[a], indices[b]);
    }
    if (!m.labels.empty()) labels.push_back(m.labels[indices[a]]);
  }
  return make_module(k, F, V, labels);
}

bool is_morphism(const FiniteField& k, const FqMatrix& t, const DieudonneModule& from, const DieudonneModule& to) {
  return multiply(k, t, from.F_matrix) == multiply(k, to.F_matrix, frobenius(k, t)) &&
         multiply(k, t, from.V_matrix) == multiply(k, to.V_matrix, frobenius_inverse(k, t));
}

namespace {

bool squarefree(std::int64_t n) {
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

// D mod p is a square in F_{p^d}: always for even d, Euler's criterion otherwise.
bool square_in_k(std::int64_t D, std::uint64_t p, int d) {
  if (d % 2 == 0) return true;
  std::uint64_t a = static_cast<std::uint64_t>(D) % p, r = 1, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r == 1;
}

}  // namespace

std::int64_t choose_rm_discriminant(std::uint64_t p, int d, RMKind kind) {
  if (kind == RMKind::Inert && d % 2 == 0)
    throw std::domain_error("no inert real quadratic order over an even-degree field");
  auto ok = [&](std::int64_t D) {
    if (!squarefree(D) || static_cast<std::uint64_t>(D) % p == 0) return false;
    return square_in_k(D, p, d) == (kind == RMKind::Split);
  };
  if (ok(5)) return 5;
  for (std::int64_t D = 2;; ++D)
    if (ok(D)) return D;
}

RMStructure split_rm_ordinary(const FiniteField& k) {
  RMStructure rm;
  rm.kind = RMKind::Split;
  rm.D = choose_rm_discriminant(k.p(), k.degree(), RMKind::Split);
  rm.action_matrices = {FqMatrix::diagonal({k.one(), k.zero(), k.one(), k.zero()}),
                        FqMatrix::diagonal({k.zero(), k.one(), k.zero(), k.one()})};
  return rm;
}

RMStructure split_rm_nonordinary(const FiniteField& k) {
  RMStructure rm;
  rm.kind = RMKind::Split;
  rm.D = choose_rm_discriminant(k.p(), k.degree(), RMKind::Split);
  rm.action_matrices = {FqMatrix::diagonal({k.one(), k.one(), k.zero(), k.zero()}),
                        FqMatrix::diagonal({k.zero(), k.zero(), k.one(), k.one()})};
  return rm;
}

RMStructure inert_rm(const FiniteField& k) {
  RMStructure rm;
  rm.kind = RMKind::Inert;
  rm.D = choose_rm_discriminant(k.p(), k.degree(), RMKind::Inert);
  FqMatrix c(2, 2);
  c.at(0, 1) = k.from_int(rm.D);
  c.at(1, 0) = k.one();
  rm.action_matrices = {FqMatrix::identity(k, 4), direct_sum(c, c)};
  return rm;
}

bool rm_commutes(const FiniteField& k, const DieudonneModule& m, const RMStructure& rm) {
  for (const auto& x : rm.action_matrices) {
    if (x.rows() != m.dim) return false;
    if (multiply(k, m.F_matrix, frobenius(k, x)) != multiply(k, x, m.F_matrix)) return false;
    if (multiply(k, m.V_matrix, frobenius_inverse(k, x)) != multiply(k, x, m.V_matrix)) return false;
  }
  return true;
}

bool rm_relations_hold(const FiniteField& k, const RMStructure& rm) {
  if (rm.kind == RMKind::Split) {
    if (rm.action_matrices.size() != 2) return false;
    const auto& f1 = rm.action_matrices[0];
    const auto& f2 = rm.action_matrices[1];
    const std::size_t n = f1.rows();
    return multiply(k, f1, f1) == f1 && multiply(k, f2, f2) == f2 && multiply(k, f1, f2).is_zero() &&
           add(k, f1, f2) == FqMatrix::identity(k, n);
  }
  if (rm.action_matrices.size() != 2) return false;
  const auto& s = rm.action_matrices[1];
  const std::size_t n = s.rows();
  FqMatrix dI = FqMatrix::identity(k, n);
  for (std::size_t i = 0; i < n; ++i) dI.at(i, i) = k.from_int(rm.D);
  if (multiply(k, s, s) != dI) return false;
  // Degree-one minimal polynomial would make s a scalar.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !k.is_zero(s.at(i, j))) return true;
  return false;
}

bool is_rm_stable(const FiniteField& k, const RMStructure& rm, const Subspace& s) {
  for (const auto& x : rm.action_matrices)
    for (const auto& v : s.basis())
      if (!s.contains(k, multiply(k, x, v))) return false;
  return true;
}

}  // namespace ltlab
