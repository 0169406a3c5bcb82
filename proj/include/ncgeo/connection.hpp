#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncgeo/ce.hpp"
#include "ncgeo/module.hpp"
#include "ncgeo/universal.hpp"

namespace ncgeo {

/// A Dubois-Violette connection on a module of any type: a centre-linear
/// family u -> nabla_u of K-linear endomorphisms of P, stored against a
/// fixed derivation frame and extended K-linearly in u.
class DVConnection {
public:
  DVConnection(FramePtr frame, FiniteModule module, std::vector<Matrix> endos);

  const FramePtr& frame() const { return m_frame; }
  const FiniteModule& module() const { return m_module; }
  const Matrix& endo(std::size_t r) const { return m_endos[r]; }
  std::size_t size() const { return m_endos.size(); }

  /// nabla_u for an arbitrary derivation by frame-coordinate extension.
  Matrix endo_for(const Derivation& u) const;

private:
  FramePtr m_frame;
  FiniteModule m_module;
  std::vector<Matrix> m_endos;
};

struct DVCheckResult {
  bool ok = true;
  std::string diagnostic;  // names the first violated constraint
};

/// Exact verification of centre-linearity and the two-sided Leibniz rule on
/// all basis combinations applicable to the module kind.
DVCheckResult dv_check(const DVConnection& conn);

/// The canonical connection nabla_u(a) = u(a) on P = A (central bimodule).
DVConnection dv_canonical_connection(const FramePtr& frame);

/// nabla_{ad b}(p) = b p - p b on a central bimodule over an algebra whose
/// frame derivations are all inner; throws Error when some basis derivation
/// is not inner.
DVConnection dv_inner_connection(const FramePtr& frame, FiniteModule module);

/// R_{u_r, u_q} = [nabla_r, nabla_q] - nabla_{[u_r, u_q]}.
Matrix dv_curvature(const DVConnection& conn, std::size_t r, std::size_t q);
Matrix dv_curvature(const DVConnection& conn, const Derivation& u, const Derivation& v);

/// Torsion of a linear connection (a DV connection on the CE 1-forms module
/// in ce_forms_module coordinates): (T phi)(u, v) = (d phi)(u, v)
/// - nabla_u(phi)(v) + nabla_v(phi)(u), as a matrix from degree-1 to
/// degree-2 flat coordinates.
Matrix dv_torsion(const DVConnection& conn);

/// True iff op is an endomorphism of the module structure (commutes with
/// all applicable actions).
bool is_module_endomorphism(const FiniteModule& p, const Matrix& op);

DVConnection dv_direct_sum(const DVConnection& a, const DVConnection& b);

/// Dual connection via u<p, f> = <nabla_u p, f> + <p, nabla'_u f>; throws
/// SingularError when the candidate functional leaves the Hom span instead
/// of selecting a pseudo-solution.
DVConnection dv_dual(const DVConnection& conn, const DualModule& dual);

/// Tensor-product connection (+id x nabla2 + nabla1 x id) on a balanced
/// tensor product; the endomorphisms are verified to preserve the balancing
/// subspace before descending.
DVConnection dv_tensor(const DVConnection& c1, const DVConnection& c2,
                       const TensorModule& t);

/// Conjugate connection nabla*_u(p) = (nabla_{u*}(p*))*; requires module and
/// algebra involutions.
DVConnection dv_conjugate(const DVConnection& conn);

bool dv_is_real(const DVConnection& conn);

/// The u-indexed family nabla_u - nabla'_u; entries are module
/// endomorphisms exactly when both inputs are connections on the module.
std::vector<Matrix> dv_difference(const DVConnection& a, const DVConnection& b);

/// Adds a family of module endomorphisms to a connection (affine structure).
DVConnection dv_translate(const DVConnection& conn, const std::vector<Matrix>& sigma);

// --- universal connections --------------------------------------------------

/// Presentation space for universal connections on a one-sided module P
/// carried inside a free module A^N by an idempotent (identity for free P).
/// Elements of P (x) Omega^k [Omega^k (x) P] are stored as N-columns of
/// degree-k tensor coordinates; T_k is the image subspace of the idempotent.
class UConnSpace {
public:
  UConnSpace(AlgebraPtr algebra, AlgebraMatrix idem, bool left_module,
             std::size_t max_degree = 2);
  static std::shared_ptr<UConnSpace> free_space(const AlgebraPtr& a, std::size_t n,
                                                bool left_module);
  static std::shared_ptr<UConnSpace> projective_space(const AlgebraPtr& a,
                                                      const AlgebraMatrix& idem);

  const AlgebraPtr& algebra() const { return m_algebra; }
  bool left_module() const { return m_left; }
  std::size_t n() const { return m_n; }
  const AlgebraMatrix& idempotent() const { return m_idem; }
  const UniversalCalculus& calculus() const { return m_calc; }

  const Subspace& carrier() const { return m_carrier; }
  std::size_t dim() const { return m_carrier.dim(); }
  const Subspace& tensor_space(std::size_t k) const;

  /// Module action on carrier coordinates: the structural side (left action
  /// for left modules, right action for right modules).
  Matrix module_act(const AlgebraElement& a) const;
  /// Matching action on T_k coordinates.
  Matrix tensor_act(const AlgebraElement& a, std::size_t k) const;

  /// delta a (x) p  [p (x) delta a] in T_1 coordinates.
  Vec leibniz_term(const AlgebraElement& a, const Vec& carrier_coords) const;

  /// The Grassmann map p o delta in T_1 coordinates.
  Matrix grassmann_map() const;

  /// Extension T_1 -> T_2 of a connection map (graded Leibniz); verified
  /// well-defined on the balanced presentation.
  Matrix extend(const Matrix& nabla) const;

  /// Entrywise evaluation pairing against a derivation: T_1 -> carrier.
  Matrix interior_pairing(const Derivation& u) const;

private:
  Vec idem_column(std::size_t entry, const Vec& tensor_coords, std::size_t k) const;

  AlgebraPtr m_algebra;
  AlgebraMatrix m_idem;
  bool m_left;
  std::size_t m_n;
  UniversalCalculus m_calc;
  Subspace m_carrier;
  std::vector<Subspace> m_tensor;  // T_1 .. T_maxdeg
};

using USpacePtr = std::shared_ptr<UConnSpace>;

/// A universal connection nabla : P -> Omega^1 (x) P  [P (x) Omega^1].
struct UniversalConnection {
  USpacePtr space;
  Matrix map;  // carrier coords -> T_1 coords
};

/// The Grassmann connection p o delta.
UniversalConnection grassmann_universal_connection(const USpacePtr& space);

struct UniversalCheckResult {
  bool ok = true;
  std::string diagnostic;
};

/// Exact Leibniz verification on all basis pairs.
UniversalCheckResult universal_check(const UniversalConnection& conn);

/// nabla^2 : P -> Omega^2 (x) P; an A-module morphism by construction,
/// verified by the caller's tests.
Matrix universal_curvature(const UniversalConnection& conn);

/// nabla_u = (u -| ) o nabla: the K-module endomorphism of P induced by a
/// derivation; obeys the one-sided Leibniz rule.
Matrix universal_interior_reduce(const UniversalConnection& conn, const Derivation& u);

struct BimodulePairReport {
  bool rho_supplied = false;
  bool rho_compatible = false;   // rho o nabla^L = nabla^R
  bool bimodule_condition = true;  // u -| nabla^L(p) = nabla^R(p) |- u for all u, p
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (frame index, carrier index)
};

/// Compatibility report for a pair of one-sided universal connections on
/// the same carrier (left space first).
BimodulePairReport bimodule_pair_check(const UniversalConnection& left,
                                       const UniversalConnection& right,
                                       const FramePtr& frame,
                                       const std::optional<Matrix>& rho);

}  // namespace ncgeo
