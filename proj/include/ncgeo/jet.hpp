#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ncgeo/ce.hpp"
#include "ncgeo/module.hpp"

namespace ncgeo {

/// The k-order jet module J^k(P) of a left module P over a commutative
/// algebra: the quotient of A (x) P by the submodule mu^{k+1} generated by
/// iterated delta^b operators applied to 1 (x) p, carrying both the left
/// multiplication b(a (x) p) = ba (x) p and the star-left multiplication
/// b*(a (x) p) = a (x) bp.  Construction over a noncommutative algebra
/// raises NoncommutativeAlgebraError: the delta^b generators are left-module
/// morphisms only when the coefficients commute, so the quotient would not
/// carry the stated module structures.
class JetModule {
public:
  JetModule(AlgebraPtr algebra, FiniteModule module, std::size_t order);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const FiniteModule& base_module() const { return m_module; }
  std::size_t order() const { return m_order; }
  std::size_t dim() const { return m_q.dim(); }

  const QuotientMap& quotient_map() const { return m_q; }
  const Subspace& mu() const { return m_q.kernel_space(); }

  /// J^k : P -> J^k(P), p -> 1 (x) p mod mu^{k+1}.
  const Matrix& jet_map() const { return m_jet; }
  /// pi^k_0 : J^k(P) -> P, a (x) p -> a p.
  const Matrix& pi0() const { return m_pi0; }

  const Matrix& left_action(std::size_t i) const { return m_left[i]; }
  const Matrix& star_action(std::size_t i) const { return m_star[i]; }
  Matrix left_action(const Vec& a) const;
  Matrix star_action(const Vec& a) const;

  /// Ambient helpers (A (x) P coordinates, index i*p + beta).
  std::size_t ambient_dim() const { return m_algebra->dim() * m_module.dim(); }
  Matrix ambient_left(std::size_t i) const;
  Matrix ambient_star(std::size_t i) const;
  Matrix ambient_delta(std::size_t i) const;

private:
  AlgebraPtr m_algebra;
  FiniteModule m_module;
  std::size_t m_order;
  QuotientMap m_q;
  std::vector<Matrix> m_left, m_star;
  Matrix m_jet, m_pi0;
};

JetModule jet_module(const AlgebraPtr& a, const FiniteModule& p, std::size_t order);

/// The epimorphism pi^k_{k-1} : J^k(P) -> J^{k-1}(P) (and more generally to
/// any lower order), well-defined because mu^{k+1} is contained in mu^s.
Matrix jet_projection(const JetModule& higher, const JetModule& lower);

/// The differentials module O^1 = (ker mu^1) mod mu^2 of a commutative
/// algebra, with d^1 and the coordinate machinery tying it to J^1.
class O1Module {
public:
  explicit O1Module(const AlgebraPtr& a);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const JetModule& j1() const { return m_j1; }
  const FiniteModule& module() const { return m_module; }
  std::size_t dim() const { return m_module.dim(); }

  /// d^1 : A -> O^1 coordinates; Leibniz d^1(ba) = b d^1 a + a d^1 b.
  const Matrix& d1_matrix() const { return m_d1; }
  Vec d1(const AlgebraElement& a) const;

  /// Embedding of O^1 coordinates into J^1 coordinates (image = ker pi^1_0).
  const Matrix& into_j1() const { return m_into_j1; }
  /// Coordinates of a J^1 vector lying in ker pi^1_0; nullopt otherwise.
  std::optional<Vec> from_j1(const Vec& v) const;

  /// A (x) A representative of an O^1 basis element; mu^1 of it vanishes.
  Vec representative(std::size_t basis_index) const;

private:
  AlgebraPtr m_algebra;
  JetModule m_j1;
  Subspace m_inside;  // subspace of J^1 coords
  FiniteModule m_module;
  Matrix m_d1, m_into_j1;
};

/// The canonical splitting J^1 = A + O^1: i_1(a) = a (x) 1 mod mu^2, the
/// component maps, and the round-trip identity.
struct Jet1Splitting {
  Matrix i1;        // A -> J^1 coords
  Matrix to_alg;    // J^1 -> A   (pi^1_0)
  Matrix to_o1;     // J^1 -> O^1 coords (xi - i1 pi0 xi)
};

Jet1Splitting jet1_splitting(const O1Module& o1);

/// Explicit isomorphism J^1(P) = J^1 (x) P (star structure balanced against
/// the left structure of P), realized as an invertible matrix.
struct Jet1ModuleIso {
  Matrix iso;       // J^1(P) coords -> (J^1 (x) P) coords
  QuotientMap tensor_q;  // from plain J^1 x P coordinates
};

Jet1ModuleIso jet1_of_module_iso(const JetModule& j1p, const JetModule& j1);

// --- linear differential operators ----------------------------------------

/// delta_a Delta = a Delta - Delta a as K-linear maps P -> Q.
Matrix diffop_delta(const FiniteModule& p, const FiniteModule& q, std::size_t i,
                    const Matrix& op);

/// Order-s test of Def: all (s+1)-fold delta compositions over basis tuples
/// vanish; multilinearity makes basis tuples sufficient.
bool is_diffop(const FiniteModule& p, const FiniteModule& q, const Matrix& op,
               std::size_t order);

/// The representing homomorphism f : J^s(P) -> Q of an order-s operator,
/// with f o J^s = Delta; throws InvariantError naming a violated generator
/// when Delta is not of the stated order.
Matrix diffop_to_hom(const JetModule& js, const FiniteModule& q, const Matrix& op);

/// Delta = f o J^s.
Matrix hom_to_diffop(const JetModule& js, const Matrix& f);

/// dim Hom_A(J, Q) by linear solve (left-module morphisms).
std::size_t hom_space_dim(const JetModule& js, const FiniteModule& q);

/// dim Diff_1(P, Q) by linear solve.
std::size_t diff1_space_dim(const FiniteModule& p, const FiniteModule& q);

// --- connections on modules over commutative algebras ----------------------

/// Shared machinery for connections on P: J^1(P), O^1, the balanced tensor
/// O^1 (x) P and its embedding onto ker pi^1_0 inside J^1(P).
class ConnectionSpace {
public:
  ConnectionSpace(const AlgebraPtr& a, FiniteModule p);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const FiniteModule& base_module() const { return m_p; }
  const JetModule& j1p() const { return m_j1p; }
  const O1Module& o1() const { return m_o1; }
  const FiniteModule& tensor_module() const { return m_tensor.module; }
  const QuotientMap& tensor_quotient() const { return m_tensor.q; }
  /// O^1 (x) P -> J^1(P), injective with image ker pi^1_0.
  const Matrix& iota() const { return m_iota; }

  /// d^1 a (x) p in tensor coordinates.
  Vec d1_tensor(const AlgebraElement& a, const Vec& p) const;

private:
  AlgebraPtr m_algebra;
  FiniteModule m_p;
  JetModule m_j1p;
  O1Module m_o1;
  TensorModule m_tensor;
  Matrix m_iota;
};

/// A connection on P in both presentations: a left-module splitting
/// Gamma: P -> J^1(P) of the jet sequence, and the complementary covariant
/// differential nabla: P -> O^1 (x) P obeying the Leibniz rule.  The two
/// are mutually inverse, which connection_from_splitting and
/// splitting_from_connection realize.
struct CommutativeConnection {
  Matrix splitting;  // P -> J^1(P) coords
  Matrix covariant;  // P -> (O^1 (x) P) coords
};

CommutativeConnection connection_from_splitting(const ConnectionSpace& cs,
                                                const Matrix& gamma);
CommutativeConnection splitting_from_connection(const ConnectionSpace& cs,
                                                const Matrix& nabla);

/// The canonical connection on P = A: Gamma = i_1, nabla = d^1.
CommutativeConnection canonical_connection(const ConnectionSpace& cs);

/// Duality O^1 = Hom_A(dA, A) required by the derivation-law presentation.
struct O1DualityReport {
  std::size_t o1_dim = 0;
  std::size_t hom_dim = 0;
  bool bijective = false;
};

O1DualityReport o1_derivation_duality(const ConnectionSpace& cs, const FramePtr& frame);

/// The derivation-law family { nabla_tau } of a connection: nabla_tau(s) =
/// (tau -| nabla s).  Requires the duality above to be an isomorphism;
/// throws Error naming the failure otherwise (the two definitions are then
/// not equivalent for this algebra).
std::vector<Matrix> connection_as_derivation_law(const ConnectionSpace& cs,
                                                 const FramePtr& frame,
                                                 const CommutativeConnection& conn);

// --- connections on a ring over a base subalgebra --------------------------

/// One member of a family: a derivation tau of the base subalgebra given in
/// base coordinates, and a candidate operator nabla on the full ring.
struct RingConnectionMember {
  Matrix tau;    // base-coordinate action
  Matrix nabla;  // ring action
};

/// Checks Def-style ring connections: every nabla is a derivation of S and
/// obeys nabla(f s) = tau(f) s + f nabla(s) for f in the base subalgebra.
bool ring_connection_check(const AlgebraPtr& s,
                           const std::vector<AlgebraElement>& base_basis,
                           const std::vector<RingConnectionMember>& family);

/// The difference of two valid families over the same taus vanishes on the
/// base; returns true when that holds.
bool ring_connection_difference_vanishes(const AlgebraPtr& s,
                                         const std::vector<AlgebraElement>& base_basis,
                                         const std::vector<RingConnectionMember>& f1,
                                         const std::vector<RingConnectionMember>& f2);

}  // namespace ncgeo
