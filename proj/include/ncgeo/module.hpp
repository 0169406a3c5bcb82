#pragma once

#include <optional>
#include <vector>

#include "ncgeo/algebra.hpp"

namespace ncgeo {

/// Module taxonomy: right (1,0), left (0,1), central bimodule (1,1),
/// centre-bimodule (0,0).  Internally each kind resolves to which algebra
/// acts on each side: the full algebra or only its centre.  A right module
/// carries the canonical left centre action z v := v z, and symmetrically.
enum class ModuleKind { Right10, Left01, Central11, Centre00 };

enum class Side { Full, Centre };

Side left_level(ModuleKind k);
Side right_level(ModuleKind k);
const char* kind_name(ModuleKind k);

/// A finite-dimensional module over a FiniteAlgebra, presented by explicit
/// action tensors over the algebra basis (full-algebra sides) or over the
/// centre basis (centre-only sides of kind (0,0)).  The kind is a stored tag
/// validated at construction, not inferred.
class FiniteModule {
public:
  /// Empty placeholder; every meaningful instance comes from a factory.
  FiniteModule() = default;

  static FiniteModule from_actions(AlgebraPtr algebra, ModuleKind kind,
                                   std::size_t dim,
                                   std::optional<std::vector<Matrix>> left_full,
                                   std::optional<std::vector<Matrix>> right_full,
                                   std::optional<std::vector<Matrix>> centre_action =
                                       std::nullopt,
                                   std::optional<Matrix> involution = std::nullopt);

  /// A^rank with the regular actions on each component.
  static FiniteModule free_module(AlgebraPtr algebra, std::size_t rank,
                                  ModuleKind kind);
  static FiniteModule zero_module(AlgebraPtr algebra, ModuleKind kind);

  const AlgebraPtr& algebra() const { return m_algebra; }
  ModuleKind kind() const { return m_kind; }
  std::size_t dim() const { return m_dim; }

  Side left_side() const { return left_level(m_kind); }
  Side right_side() const { return right_level(m_kind); }

  bool has_left_full() const { return m_left.has_value(); }
  bool has_right_full() const { return m_right.has_value(); }
  const Matrix& left_matrix(std::size_t i) const;
  const Matrix& right_matrix(std::size_t i) const;
  Matrix left_action(const Vec& a) const;
  Matrix right_action(const Vec& a) const;

  /// Action of a central element from the left [right]; defined for every
  /// kind via the canonical central structure.
  Matrix central_left_action(const AlgebraElement& z) const;
  Matrix central_right_action(const AlgebraElement& z) const;

  /// The algebra's centre basis (cached at construction).
  const std::vector<AlgebraElement>& centre() const { return m_centre; }

  bool has_involution() const { return m_involution.has_value(); }
  /// Antilinear: v* = M conj(v).
  const Matrix& involution_matrix() const;
  Vec involution(const Vec& v) const;

  /// Action by a basis element of the middle algebra of a balanced tensor
  /// product: right side of this module at the given level.
  Matrix middle_right_action(Side level, std::size_t idx) const;
  Matrix middle_left_action(Side level, std::size_t idx) const;

private:
  void validate() const;

  AlgebraPtr m_algebra;
  ModuleKind m_kind = ModuleKind::Left01;
  std::size_t m_dim = 0;
  std::optional<std::vector<Matrix>> m_left;       // per algebra basis element
  std::optional<std::vector<Matrix>> m_right;      // per algebra basis element
  std::optional<std::vector<Matrix>> m_centre_act; // per centre basis element (kind (0,0))
  std::optional<Matrix> m_involution;
  std::vector<AlgebraElement> m_centre;
};

/// Direct sum of two modules of the same kind.
FiniteModule direct_sum(const FiniteModule& p, const FiniteModule& q);

/// The A-dual P* = Hom_{A_i-A_j}(P, A) materialized as a kernel computation,
/// of kind (i+1, j+1) mod 2.  `maps` realizes the basis of P* as explicit
/// K-linear maps P -> A; `span` is their flattened row-major span, used for
/// coordinates of derived functionals.
struct DualModule {
  FiniteModule module;
  std::vector<Matrix> maps;  // each m x p
  Subspace span;             // flattened maps inside K^{m p}
};

DualModule dual_module(const FiniteModule& p);

/// The natural homomorphism P -> P**, with injectivity exposed by rank.
Matrix double_dual_map(const FiniteModule& p, const DualModule& dual,
                       const DualModule& double_dual);

/// Balanced tensor product of P (.., k) and Q (k, ..): the quotient of the
/// plain tensor product by span{ p a (x) q - p (x) a q } over the middle
/// algebra; kinds compose.
struct TensorModule {
  FiniteModule module;
  QuotientMap q;  // from the plain p*q-dimensional tensor space
};

TensorModule tensor_modules(const FiniteModule& p, const FiniteModule& q);

/// Coordinates of v (x) w in the plain tensor space.
Vec pure_tensor(const Vec& v, const Vec& w);

/// Matrix with entries in an algebra; used for idempotents and the
/// free-module presentations of projective modules.
class AlgebraMatrix {
public:
  AlgebraMatrix(AlgebraPtr algebra, std::size_t rows, std::size_t cols);
  static AlgebraMatrix identity(AlgebraPtr algebra, std::size_t n);

  const AlgebraPtr& algebra() const { return m_algebra; }
  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }
  AlgebraElement& at(std::size_t i, std::size_t j);
  const AlgebraElement& at(std::size_t i, std::size_t j) const;

  AlgebraMatrix operator*(const AlgebraMatrix& o) const;
  bool operator==(const AlgebraMatrix& o) const;

  /// K-linear operator on A^cols given by left multiplication of entries.
  Matrix left_operator() const;
  /// Entrywise involution-transpose (p*)_{ij} = (p_{ji})*.
  AlgebraMatrix conj_transpose() const;

private:
  AlgebraPtr m_algebra;
  std::size_t m_rows, m_cols;
  std::vector<AlgebraElement> m_entries;
};

/// True iff p is square and p^2 = p exactly.
bool idempotent_check(const AlgebraMatrix& p);

/// The right module P = p A^N presented on an explicit basis of the image
/// of p, together with the embedding into the ambient free module.
struct ProjectiveModule {
  FiniteModule module;    // kind (1,0)
  Matrix embed;           // (N m) x dim, columns = image basis
  Subspace image;         // inside A^N coordinates
  AlgebraMatrix idempotent;
};

ProjectiveModule projective_from_idempotent(const AlgebraPtr& a,
                                            const AlgebraMatrix& p);

}  // namespace ncgeo
