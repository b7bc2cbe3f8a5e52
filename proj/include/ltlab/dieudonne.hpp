#pragma once

// Finite Dieudonne modules over k = F_{p^d} killed by p: a k-vector space with
// a sigma-semilinear F and a sigma^-1-semilinear V such that FV = VF = 0.
// Column convention: F(v) = F_matrix * sigma(v), V(v) = V_matrix * sigma^-1(v).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltlab/linalg.hpp"
#include "ltlab/ring_core.hpp"

namespace ltlab {

enum class BlockLabel { Etale, Multiplicative, LocalLocal };

std::string to_string(BlockLabel label);

struct DieudonneModule {
  FieldParams field;
  std::size_t dim = 0;
  FqMatrix F_matrix;
  FqMatrix V_matrix;
  std::vector<BlockLabel> labels;  // empty when not built from a named group scheme

  FqVector apply_F(const FiniteField& k, const FqVector& v) const;
  FqVector apply_V(const FiniteField& k, const FqVector& v) const;
  /// log_p of the order of the corresponding group scheme.
  std::size_t order_exponent() const { return dim * static_cast<std::size_t>(field.d); }
};

enum class RMKind { Split, Inert };

std::string to_string(RMKind kind);

/// Action of O (x) k on a module. Split: the idempotents f1, f2. Inert: the
/// identity and the matrix of sqrt(D).
struct RMStructure {
  RMKind kind = RMKind::Split;
  std::vector<FqMatrix> action_matrices;
  std::int64_t D = 5;
};

/// Etale block of rank 2 with F = [[1, mu], [0, chi]] composed with sigma, plus
/// its Cartier dual (F = 0, V = id). Basis e1, e2 etale, e3, e4 multiplicative.
DieudonneModule build_ordinary_module(const FiniteField& k, const FqElem& mu, const FqElem& chi);

/// Local-local block e1, e2 (F: e2 -> e1, V: e2 -> e1), e3 multiplicative,
/// e4 etale. Image of F is span(e1, e4).
DieudonneModule build_nonordinary_module(const FiniteField& k);

/// M(Z/p) (F = sigma, V = 0) and M(mu_p) (F = 0, V = sigma^-1) of rank r.
DieudonneModule build_constant_module(const FiniteField& k, std::size_t r = 1);
DieudonneModule build_mu_module(const FiniteField& k, std::size_t r = 1);

/// Checks FV = VF = 0 and matrix shapes; throws std::invalid_argument otherwise.
DieudonneModule make_module(const FiniteField& k, FqMatrix F, FqMatrix V, std::vector<BlockLabel> labels = {});

bool is_etale(const FiniteField& k, const DieudonneModule& m);
bool is_connected(const FiniteField& k, const DieudonneModule& m);
DieudonneModule dual(const FiniteField& k, const DieudonneModule& m);

Subspace image_F(const FiniteField& k, const DieudonneModule& m);
Subspace image_V(const FiniteField& k, const DieudonneModule& m);
bool is_sub_dieudonne(const FiniteField& k, const DieudonneModule& m, const Subspace& s);
/// Restriction to a coordinate block; throws if the block is not F,V-stable.
DieudonneModule restrict_to_coordinates(const FiniteField& k, const DieudonneModule& m,
                                        const std::vector<std::size_t>& indices);

/// T * A1 = A2 * sigma(T) and T * B1 = B2 * sigma^-1(T).
bool is_morphism(const FiniteField& k, const FqMatrix& t, const DieudonneModule& from, const DieudonneModule& to);

/// Smallest squarefree D > 1 (5 preferred) that is a square (split) or a
/// non-square (inert) in k and prime to p. Inert needs odd d.
std::int64_t choose_rm_discriminant(std::uint64_t p, int d, RMKind kind);

RMStructure split_rm_ordinary(const FiniteField& k);
RMStructure split_rm_nonordinary(const FiniteField& k);
/// sqrt(D) acts as [[0, D], [1, 0]] on span(e1, e2) and span(e3, e4).
RMStructure inert_rm(const FiniteField& k);

/// Every action matrix commutes with F and V (with the sigma twists).
bool rm_commutes(const FiniteField& k, const DieudonneModule& m, const RMStructure& rm);
/// Algebra relations: idempotents for split, X^2 = D with X^2 - D minimal for inert.
bool rm_relations_hold(const FiniteField& k, const RMStructure& rm);
bool is_rm_stable(const FiniteField& k, const RMStructure& rm, const Subspace& s);

}  // namespace ltlab
