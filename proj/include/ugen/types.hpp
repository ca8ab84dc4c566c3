#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ugen {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

// Tolerances shared across modules.
inline constexpr double kBlochTol = 1e-12;      // Bloch-ball membership of stored states
inline constexpr double kPsdTol = 1e-10;        // eigenvalue floor for valid density operators
inline constexpr double kUnitaryTol = 1e-10;    // U^dagger U = I
inline constexpr double kProbabilityFloor = 1e-14;
inline constexpr double kDefaultMatchTol = 1e-9;
// Slack on |zeta| <= 1 when classifying a solved environment state. Optimal
// solutions sit exactly on the sphere, so round-off must not flip them.
inline constexpr double kFeasibleNormSlack = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class DegenerateOutcome : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

class AxisDegenerate : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ugen
