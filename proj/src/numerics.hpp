// Copyright 2026 The tfqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TFQKD_NUMERICS_HPP
#define TFQKD_NUMERICS_HPP

#include <stdexcept>

namespace tfqkd {

// Absolute tolerance used when validating probabilities at construction
// boundaries; values within this band of [0,1] are clamped instead of
// rejected, absorbing float round-off from upstream arithmetic.
inline constexpr double kProbabilityTol = 1e-12;

/// A real number constrained to [0,1]. Throws std::domain_error on values
/// outside the tolerance band.
class Probability {
 public:
  Probability(double v);  // NOLINT: implicit by design
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_;
};

/// Shannon binary entropy h(x) = -x log2 x - (1-x) log2(1-x), with the
/// convention 0 log 0 = 0.
double binary_entropy(Probability x);

/// Bell-diagonal error descriptor of a shared pair ensemble: bit-error
/// probability e_b, phase-error probability e_p and joint bit-and-phase
/// error probability a. The implied Bell weights
///   l1 = 1 - e_b - e_p + a,  l2 = e_p - a,  l3 = e_b - a,  l4 = a
/// must all be nonnegative (within kProbabilityTol).
struct ErrorTriple {
  ErrorTriple(double e_b, double e_p, double a);

  double e_b;
  double e_p;
  double a;
};

/// Conditional Shannon entropy H(e_p | e_b) of the phase error given the bit
/// error, for a Bell-diagonal ensemble. Each of the four terms is clamped to
/// zero when its probability vanishes, so the e_b -> 0 and fully-correlated
/// limits are exact. Equals binary_entropy(e_p) when a = e_b * e_p.
double conditional_entropy(const ErrorTriple& t);

/// Modified Bessel function of the first kind, I0(x), for x >= 0.
/// Power series below x = 15, asymptotic expansion beyond; good to at least
/// 12 significant digits on [0, 50].
double bessel_i0(double x);

/// Binomial coefficient C(n, k) as a double. Exact for n <= 30 and accurate
/// to better than 1e-12 relative up to the overflow guard n <= 170.
double binomial(int n, int k);

}  // namespace tfqkd

#endif  // TFQKD_NUMERICS_HPP
