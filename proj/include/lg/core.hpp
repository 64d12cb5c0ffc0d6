#pragma once
// Common scalar/matrix aliases and error types shared by all modules.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace lg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Default tolerances (see design notes: relative for composed operations,
// absolute for comparisons near zero).  Call sites may override.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

// All recoverable contract violations are reported through this exception;
// `code` carries a stable machine-readable tag used by the CLI.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace lg
