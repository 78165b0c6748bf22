#pragma once

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace autores {

/// 113-bit significand; used where double rounding would swamp a quantity
/// being measured (residuals of long truncations at large t).
using QuadReal = boost::multiprecision::cpp_bin_float_quad;

template <class Real>
struct ComplexTraits {
  using type = std::complex<Real>;
};

template <>
struct ComplexTraits<QuadReal> {
  using type = boost::multiprecision::cpp_complex_quad;
};

template <class Real>
using ComplexOf = typename ComplexTraits<Real>::type;

template <class Real>
double to_double(const Real& v) {
  return static_cast<double>(v);
}

template <class Real>
std::complex<double> to_complex_double(const ComplexOf<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace autores
