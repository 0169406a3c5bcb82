#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ncgeo/algebra.hpp"
#include "ncgeo/module.hpp"

namespace ncgeo {

/// A fixed K-basis of the derivation Lie algebra of A, with precomputed
/// bracket coordinates, centre basis, and (when the algebra is involutive)
/// the coordinates of the starred basis derivations.  Shared by CE forms,
/// connections and the matrix-geometry frame.
class DerivationFrame {
public:
  /// Frame on the canonical derivation_basis(A).
  static std::shared_ptr<const DerivationFrame> standard(const AlgebraPtr& a);
  /// Frame on a caller-supplied basis (validated: independent, spanning the
  /// derivation module, bracket-closed).
  static std::shared_ptr<const DerivationFrame> from_basis(
      const AlgebraPtr& a, std::vector<Derivation> basis);

  const AlgebraPtr& algebra() const { return m_algebra; }
  std::size_t size() const { return m_basis.size(); }
  const std::vector<Derivation>& basis() const { return m_basis; }
  const Derivation& operator[](std::size_t r) const { return m_basis[r]; }
  const std::vector<AlgebraElement>& centre() const { return m_centre; }

  /// Coordinates of an arbitrary derivation in the frame basis.
  std::optional<Vec> coordinates(const Derivation& u) const;
  /// [u_r, u_q] in frame coordinates.
  const Vec& bracket(std::size_t r, std::size_t q) const { return m_bracket[r][q]; }
  /// u_r* in frame coordinates; requires an involutive algebra.
  const Vec& star_coords(std::size_t r) const;

private:
  DerivationFrame() = default;
  void finish();

  AlgebraPtr m_algebra;
  std::vector<Derivation> m_basis;
  std::vector<AlgebraElement> m_centre;
  Matrix m_basis_mat;  // columns = flattened basis actions
  std::vector<std::vector<Vec>> m_bracket;
  std::vector<Vec> m_star;
};

using FramePtr = std::shared_ptr<const DerivationFrame>;

/// Lexicographically ordered strictly increasing k-tuples from {0..D-1}.
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t D, std::size_t k);

/// A Chevalley-Eilenberg k-form: an alternating assignment of an algebra
/// element to each strictly increasing k-tuple of frame derivations,
/// evaluated on arbitrary derivations by K-linear expansion in the frame.
/// Antisymmetry is structural: only increasing tuples are stored.
class CEForm {
public:
  CEForm(FramePtr frame, std::size_t degree, std::vector<Vec> components);

  static CEForm zero(FramePtr frame, std::size_t degree);
  static CEForm from_element(FramePtr frame, const AlgebraElement& a);
  /// Form from flattened component vector (tuple-major).
  static CEForm from_flat(FramePtr frame, std::size_t degree, const Vec& flat);

  const FramePtr& frame() const { return m_frame; }
  std::size_t degree() const { return m_degree; }
  std::size_t tuple_count() const { return m_comp.size(); }
  const Vec& component(std::size_t tuple_index) const { return m_comp[tuple_index]; }
  AlgebraElement component_element(std::size_t tuple_index) const;
  Vec flat() const;
  bool is_zero() const;

  /// Evaluation on frame indices (any order, repeats give zero).
  Vec evaluate_indices(const std::vector<std::size_t>& idx) const;
  /// Full evaluation on arbitrary derivations by multilinear expansion.
  AlgebraElement evaluate(const std::vector<Derivation>& args) const;

  CEForm operator+(const CEForm& o) const;
  CEForm operator-(const CEForm& o) const;
  friend CEForm operator*(const Scalar& s, const CEForm& w);
  /// Left and right algebra actions (a phi)(u) = a phi(u), (phi a)(u) = phi(u) a.
  friend CEForm operator*(const AlgebraElement& a, const CEForm& w);
  friend CEForm operator*(const CEForm& w, const AlgebraElement& a);
  bool operator==(const CEForm& o) const;
  bool operator!=(const CEForm& o) const { return !(*this == o); }

private:
  FramePtr m_frame;
  std::size_t m_degree;
  std::vector<Vec> m_comp;  // one coefficient column per increasing tuple
};

/// Chevalley-Eilenberg coboundary without the 1/(k+1) prefactor: on degree
/// zero (d a)(u) = u(a); d o d = 0.  This unnormalized convention is the one
/// under which the matrix-geometry constants come out as stated; the
/// degree-1 value is exactly twice the halved convention.
CEForm ce_d(const CEForm& phi);

/// Shuffle-sum wedge without normalization; degree-0 wedge degree-0 is the
/// algebra product, and d is a graded derivation for it.
CEForm wedge(const CEForm& phi, const CEForm& psi);

/// Contraction (iota_u phi)(u1..u_{k-1}) = phi(u, u1..u_{k-1}) without a
/// degree factor; iota_u o iota_u = 0.
CEForm contract(const Derivation& u, const CEForm& phi);

/// Cartan formula L_u = d o iota_u + iota_u o d; degree preserving.
CEForm lie_derivative(const Derivation& u, const CEForm& phi);

/// phi*(u1..uk) = (phi(u1*..uk*))*.
CEForm form_involution(const CEForm& phi);

/// The CE k-forms as a central bimodule of dimension C(D,k) * m, with the
/// form involution when the algebra has one.
FiniteModule ce_forms_module(const FramePtr& frame, std::size_t degree);

/// Left-module span of { a d(e_i) } inside the CE 1-forms: the 1-forms of
/// the differential subalgebra generated by the algebra.
Subspace algebra_generated_one_forms(const FramePtr& frame);

/// Duality between derivations and the algebra-generated 1-forms via the
/// evaluation pairing: reports both dimensions and bijectivity of the
/// induced map into the bimodule dual.
struct DualityReport {
  std::size_t derivation_dim = 0;
  std::size_t dual_dim = 0;
  bool injective = false;
  bool bijective = false;
};

DualityReport one_form_duality(const FramePtr& frame);

/// True iff a . d(e_i) = d(e_i) . a for all basis pairs; on failure returns
/// the first witness (algebra basis index, generator index).
struct CentralityReport {
  bool central = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

CentralityReport differentials_central(const FramePtr& frame);

/// Subspace of flattened degree-k components that define genuinely
/// centre-multilinear maps (rescaling any argument by a central element
/// rescales the value).  Full for algebras whose centre is the base field.
Subspace central_multilinear_subspace(const FramePtr& frame, std::size_t degree);

}  // namespace ncgeo
