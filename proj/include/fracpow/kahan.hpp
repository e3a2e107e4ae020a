#pragma once

namespace fracpow {

/// Compensated (Kahan) running sum. Order of additions is preserved, so the
/// result is reproducible for a fixed input sequence.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  KahanAccumulator& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum; }
};

}  // namespace fracpow
