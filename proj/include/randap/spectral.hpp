#pragma once

// Fourier side of the two-term dual function over Z_N.
//
// With hat(1_A)(xi) = E_x 1_A(x) e(-x xi / N), the autocorrelation F(d) = E_x 1_A(x) 1_A(x+d)
// satisfies F(d) = sum_xi |hat(1_A)(xi)|^2 e(d xi / N): a convex-type combination of characters
// with nonnegative weights.

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "randap/progressions.hpp"

namespace randap {

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// (1/N) sum_x f(x) e(-x xi / N) for every xi.
template <typename Real, typename Derived>
ComplexVector<Real> normalized_transform(const Eigen::MatrixBase<Derived>& f) {
  if (f.size() <= 1) return f.derived().template cast<std::complex<Real>>();  // kissfft rejects length 1
  const std::vector<Real> input(f.derived().data(), f.derived().data() + f.size());
  std::vector<std::complex<Real>> output;
  Eigen::FFT<Real> fft;
  fft.fwd(output, input);
  ComplexVector<Real> out(f.size());
  for (Index i = 0; i < f.size(); ++i) out[i] = output[static_cast<std::size_t>(i)] / Real(f.size());
  return out;
}

/// sum_xi c(xi) e(d xi / N) for every d; the inverse of normalized_transform.
template <typename Real>
ComplexVector<Real> synthesize(const ComplexVector<Real>& coefficients) {
  if (coefficients.size() <= 1) return coefficients;
  const std::vector<std::complex<Real>> input(coefficients.data(),
                                              coefficients.data() + coefficients.size());
  std::vector<std::complex<Real>> output;
  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  fft.inv(output, input);
  return Eigen::Map<const ComplexVector<Real>>(output.data(), coefficients.size());
}

template <typename Real = double>
RealVector<Real> indicator(const DenseSet& a) {
  RealVector<Real> f = RealVector<Real>::Zero(static_cast<Index>(a.domain().size()));
  for (auto i : a.indices()) f[static_cast<Index>(i)] = Real(1);
  return f;
}

/// hat(1_A)(xi) for xi in Z_N. Parseval: sum_xi |hat|^2 = density.
template <typename Real = double>
ComplexVector<Real> spectrum(const DenseSet& a) {
  if (a.domain().kind() != DomainKind::Cyclic) {
    throw std::invalid_argument("spectrum requires a cyclic domain");
  }
  return normalized_transform<Real>(indicator<Real>(a));
}

template <typename Real = double>
struct SpectralDecomposition {
  std::vector<std::size_t> frequencies;  // kept xi, ascending
  RealVector<Real> coefficients;         // c_xi = |hat(1_A)(xi)|^2 for kept xi
  RealVector<Real> structured;           // sum over kept xi of c_xi e(d xi / N)
  RealVector<Real> residual;             // dual2(A) - structured

  RealVector<Real> reconstruct() const { return structured + residual; }
  Real max_residual() const { return residual.size() == 0 ? Real(0) : residual.cwiseAbs().maxCoeff(); }
};

/// Keeps xi with |hat(1_A)(xi)| >= eps * density (every xi when eps = 0).
template <typename Real = double>
SpectralDecomposition<Real> decompose_dual2(const DenseSet& a, Real eps) {
  if (eps < 0) throw std::invalid_argument("decompose_dual2: eps must be nonnegative");
  const auto hat = spectrum<Real>(a);
  const Real threshold = eps * Real(a.density());
  const Index n = hat.size();

  SpectralDecomposition<Real> out;
  ComplexVector<Real> kept = ComplexVector<Real>::Zero(n);
  std::vector<Real> weights;
  for (Index xi = 0; xi < n; ++xi) {
    if (eps == 0 || std::abs(hat[xi]) >= threshold) {
      const Real w = std::norm(hat[xi]);
      out.frequencies.push_back(static_cast<std::size_t>(xi));
      weights.push_back(w);
      kept[xi] = w;
    }
  }
  out.coefficients = Eigen::Map<const RealVector<Real>>(weights.data(), static_cast<Index>(weights.size()));
  out.structured = synthesize<Real>(kept).real();
  out.residual = dual2(a).values().template cast<Real>() - out.structured;
  return out;
}

}  // namespace randap
