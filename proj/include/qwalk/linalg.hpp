#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace qwalk {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using IMatrix = Eigen::MatrixXi;

inline std::span<const cplx> flat(const CMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
inline std::span<cplx> flat(CMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
inline std::span<const cplx> flat(const CVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<cplx> flat(CVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace qwalk
