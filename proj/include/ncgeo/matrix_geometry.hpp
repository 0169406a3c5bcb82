#pragma once

#include <string>
#include <vector>

#include "ncgeo/connection.hpp"

namespace ncgeo {

/// The theta-frame over M_n: the integer su(n) basis eps_r, the derivation
/// frame u_r = ad eps_r, and the dual 1-forms theta^r with
/// theta^r(u_q) = delta^r_q 1.  The CE 1-forms over M_n form a free left
/// module of rank n^2 - 1 on the theta^r.
struct ThetaFrame {
  std::size_t n = 0;
  SuBasis su;
  FramePtr frame;
  std::vector<CEForm> thetas;
  CEForm theta;          // eps_r theta^r
  FiniteModule omega1;   // CE 1-forms module in flat coordinates

  const Scalar& c(std::size_t r, std::size_t q, std::size_t s) const {
    return su.structure(r, q, s);
  }
  std::size_t rank() const { return su.rank(); }
};

ThetaFrame theta_frame(std::size_t n);

struct CheckReport {
  bool ok = true;
  std::string detail;
};

/// d eps_r = c^s_{qr} eps_s theta^q, exactly, for all r.
CheckReport depsilon_check(const ThetaFrame& tf);

/// d theta^r = -1/2 c^r_{qs} theta^q wedge theta^s under the unnormalized
/// conventions, evaluated on all basis derivation pairs.
CheckReport maurer_cartan_check(const ThetaFrame& tf);

/// Determines the unique global sign s with d a = s (a theta - theta a) for
/// every basis a; inconsistent frames report consistent = false.
struct ThetaElementReport {
  bool consistent = false;
  int sign = 0;
};

ThetaElementReport theta_element_check(const ThetaFrame& tf);

/// Scalar connection coefficients omega^p_{rq}, flat index (p D + r) D + q.
using ScalarOmega = Vec;

std::size_t omega_index(std::size_t D, std::size_t p, std::size_t r, std::size_t q);

/// The zero coefficients (the inner connection on the 1-forms).
ScalarOmega zero_omega(const ThetaFrame& tf);

/// omega = lambda c.
ScalarOmega ad_proportional_omega(const ThetaFrame& tf, const Scalar& lambda);

/// The linear connection nabla_r(b theta^p) = u_r(b) theta^p
/// + b omega^p_{rq} theta^q on the CE 1-forms module.
DVConnection scalar_omega_connection(const ThetaFrame& tf, const ScalarOmega& w);

/// Same with matrix-valued coefficients (left-Leibniz extension); used to
/// exhibit that non-scalar coefficients break the bimodule Leibniz rule.
DVConnection matrix_omega_connection(const ThetaFrame& tf,
                                     const std::vector<AlgebraElement>& w);

/// The scalar-coefficient theorem: coefficients compatible with the
/// two-sided Leibniz rule commute with all of M_n, so the solution space
/// has dimension (n^2-1)^3 over the base field.  The per-component
/// commutant is solved exactly; for n = 2 the full linear system over
/// matrix-valued coefficients is also assembled and must agree.
struct LinearConnectionSpaceReport {
  std::size_t commutant_dim = 0;       // dim of the per-component commutant
  std::size_t model_dim = 0;           // (n^2-1)^3 * commutant_dim
  bool full_system_checked = false;
  std::size_t full_system_dim = 0;     // kernel dimension of the assembled system
  bool consistent = false;             // full system (when run) agrees with the model
};

LinearConnectionSpaceReport linear_connection_space(const ThetaFrame& tf,
                                                    bool run_full_system);

/// Torsion-freeness over scalar coefficients: the constraint pins the
/// antisymmetric part, omega^p_{rq} - omega^p_{qr} = -c^p_{rq}; the
/// symmetric part stays free.  The ad-proportional representative has
/// lambda solved exactly from the substituted torsion, not assumed.
struct TorsionFreeReport {
  ScalarOmega particular;          // -1/2 c
  std::size_t solution_space_dim = 0;   // symmetric pairs x (n^2-1)
  std::size_t expected_dim = 0;
  Scalar lambda;                   // the ad-proportional solution
  bool lambda_unique = false;
  bool particular_torsion_free = false;  // verified by full substitution
  bool paper_constant_convention_dependent = true;  // lambda != -1 here
};

TorsionFreeReport torsion_free_solver(const ThetaFrame& tf);

}  // namespace ncgeo
