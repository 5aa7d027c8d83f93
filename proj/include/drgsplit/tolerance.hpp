#pragma once

namespace drgsplit {

/// Numerical thresholds shared by every stage of the pipeline.
///
/// eps_rank and eps_eig are relative factors: rank cutoffs are
/// eps_rank * sigma_max, eigenvalue clusters split at gaps larger than
/// eps_eig * ||M||. eps_zero is relative to max |q^h_ij| of the Krein table.
/// eps_orth and eps_krein are absolute.
struct ToleranceProfile {
  double eps_rank = 1e-9;
  double eps_eig = 1e-6;
  double eps_orth = 1e-8;
  double eps_krein = 1e-8;
  double eps_zero = 1e-6;

  /// Bound for internal consistency guards (idempotency of interpolated
  /// projectors, containment before a relative complement, constancy of
  /// A*_1 on a subconstituent, module invariance during extraction).
  /// Decoupled from eps_orth so that an unattainable eps_orth surfaces as a
  /// failed verification instead of a construction error.
  double guard() const noexcept { return eps_eig; }

  bool valid() const noexcept {
    return eps_rank > 0 && eps_eig > 0 && eps_orth > 0 && eps_krein > 0 &&
           eps_zero > 0;
  }
};

}  // namespace drgsplit
