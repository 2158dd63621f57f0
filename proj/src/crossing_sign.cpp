#include <cmath>
#include <sstream>

#include "skylink/alk.hpp"
#include "skylink/error.hpp"

namespace skylink {

const char* to_string(CrossingMethod method) {
  switch (method) {
    case CrossingMethod::FrameDeterminant: return "FrameDeterminant";
    case CrossingMethod::TangencyFormula: return "TangencyFormula";
    case CrossingMethod::PreimageJacobian: return "PreimageJacobian";
  }
  return "Unknown";
}

int crossing_sign_frame(const Vec3& df1, const Vec3& w, const Vec3& df2, double tol_frame) {
  Mat3 frame;
  frame << df1, w, df2;
  const double det = frame.determinant();
  const double scale = df1.norm() * w.norm() * df2.norm();
  if (!(std::abs(det) >= tol_frame * scale) || scale == 0.0) {
    std::ostringstream msg;
    msg << "resolution frame is degenerate (det=" << det << ", norms=" << scale << ")";
    throw Error(ErrorCode::DegenerateResolution, msg.str());
  }
  return det > 0.0 ? +1 : -1;
}

int tangency_sign(const Tangency& tangency, int epsilon, int alpha, double tol_hess) {
  if ((epsilon != 1 && epsilon != -1) || (alpha != 1 && alpha != -1))
    throw Error(ErrorCode::InvalidArgument, "epsilon and alpha must be +1 or -1");
  const double hess = tangency.hessian();
  if (!(std::abs(hess) > tol_hess)) {
    std::ostringstream msg;
    msg << "tangency is not of order one (g''=" << hess << ")";
    throw Error(ErrorCode::DegenerateTangency, msg.str());
  }
  return alpha * epsilon * (hess > 0.0 ? +1 : -1);
}

}  // namespace skylink
