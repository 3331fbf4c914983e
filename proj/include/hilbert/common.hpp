#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace hilbert {

/// Largest supported ambient dimension. Vectors carry inline storage of this
/// capacity so the geometric hot paths never touch the heap.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Point = Vec;
using Covector = Vec;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;
/// Homogeneous (n+1)x(n+1) matrix acting on the affine chart x -> [x : 1].
using ProjMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                 kMaxDim + 1, kMaxDim + 1>;
using HomVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim + 1, 1>;

/// Invalid input: bad parameters, dimension mismatch, point outside the body.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

/// Euclidean volume of the unit ball in R^n.
double unit_ball_volume_euclidean(int n);
/// Euclidean (n-1)-area of the unit sphere in R^n.
double unit_sphere_area_euclidean(int n);

}  // namespace hilbert
