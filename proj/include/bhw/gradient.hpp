#pragma once

#include <string>
#include <vector>

#include "bhw/controls.hpp"
#include "bhw/problem.hpp"
#include "bhw/propagator.hpp"

namespace bhw {

struct GradcheckTolerances {
  double step_position = 1e-5;
  double step_amplitude = 1e-3;
  double rel_tol = 1e-4;
  /// Coordinates where both gradients are below this are not compared.
  double negligible = 1e-7;
};

struct GradcheckRow {
  char channel;  // 'p' or 'A'
  std::size_t index;
  double analytic;
  double finite_difference;
  double rel_error;
  bool negligible;
  bool sign_disagree;
};

struct GradcheckReport {
  std::vector<GradcheckRow> rows;
  GradcheckTolerances tolerances;
  DerivativeMode mode = DerivativeMode::kCorrect;

  std::size_t sign_disagreements(char channel) const;
  std::size_t checked(char channel) const;
  bool has_sign_disagreement() const;
};

/// Terminal fidelity F = |<target|psi(T)>|^2 and its exact gradient with
/// respect to every control sample.
///
/// The gradient is assembled discretely: one forward propagation of psi,
/// one backward propagation of the costate seeded with
/// <target|psi(T)> * target, and per-step overlaps with the analytic
/// control derivatives of the tweezer, taken at both potential half-kicks
/// of the split step. It therefore differentiates the discrete propagator
/// itself and matches central finite differences to the differencing
/// error. Holds FFT plans; one instance per thread.
class FidelityEngine {
 public:
  explicit FidelityEngine(Problem problem);

  const Problem& problem() const { return problem_; }
  Propagator& propagator() { return prop_; }

  double fidelity(const ControlSequence& controls);

  /// Exact discrete dF/d(sample). In flipped mode the amplitude channel
  /// is the bitwise negation of the correct one; positions are identical.
  GradientPair fidelity_gradient(const ControlSequence& controls,
                                 DerivativeMode mode,
                                 double* fidelity_out = nullptr);

  /// Per-coordinate analytic vs central finite differences. A sign
  /// disagreement on a non-negligible coordinate is the fault signature
  /// this toolkit exists to expose.
  GradcheckReport gradcheck(const ControlSequence& controls, DerivativeMode mode,
                            const GradcheckTolerances& tolerances = {});

 private:
  // FD probes may step just past a control bound; the dynamics are still
  // well defined there, so the probe path skips the bounds check.
  double fidelity_unchecked(const ControlSequence& controls);

  Problem problem_;
  Propagator prop_;
};

}  // namespace bhw
