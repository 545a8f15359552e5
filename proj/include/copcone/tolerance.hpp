#pragma once

namespace copcone {

/// The single tolerance knob threaded through every membership and
/// factorization routine. A comparison against "zero" for data of max-norm
/// `scale` uses `abs + rel * scale`.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  double threshold(double scale) const { return abs + rel * scale; }
};

}  // namespace copcone
