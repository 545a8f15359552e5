#include "copcone/cones.hpp"

#include <algorithm>
#include <cmath>

#include "copcone/error.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

std::string_view to_string(Cone cone) {
  switch (cone) {
    case Cone::Nonneg: return "NONNEG";
    case Cone::Psd: return "PSD";
    case Cone::Copositive: return "COPOSITIVE";
    case Cone::Dnn: return "DNN";
    case Cone::Cp: return "CP";
    case Cone::CpInterior: return "CP_INTERIOR";
  }
  return "UNKNOWN";
}

std::string_view to_string(Answer answer) {
  switch (answer) {
    case Answer::In: return "IN";
    case Answer::NotIn: return "NOT_IN";
    case Answer::Undecided: return "UNDECIDED";
  }
  return "UNKNOWN";
}

ConeVerdict is_nonneg(const SymMat& a, const Tolerance& tol) {
  ConeVerdict v{Cone::Nonneg, Answer::In, {}, {}};
  const double eps = tol.threshold(a.max_abs());
  NegativeEntry worst{0, 0, 0.0};
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j)
      if (a(i, j) < worst.value) worst = {i, j, a(i, j)};
  if (worst.value < -eps) {
    v.answer = Answer::NotIn;
    v.certificate = worst;
  }
  return v;
}

ConeVerdict is_psd(const SymMat& a, const Tolerance& tol) {
  ConeVerdict v{Cone::Psd, Answer::In, {}, {}};
  const PsdResult r = psd_check(a, tol);
  if (!r.psd) {
    v.answer = Answer::NotIn;
    v.certificate = ViolationVector{r.witness, a.quadratic(r.witness)};
  }
  return v;
}

ConeVerdict is_dnn(const SymMat& m, const Tolerance& tol) {
  ConeVerdict v = is_nonneg(m, tol);
  if (v.answer == Answer::In) v = is_psd(m, tol);
  v.cone = Cone::Dnn;
  return v;
}

std::optional<InteriorCertificate> cp_interior_certificate(const NonnegFactor& v, const Tolerance& tol) {
  const std::size_t n = v.order();
  if (v.cols() < n) return std::nullopt;
  const std::size_t rank = num_rank(v.product(), tol);
  if (rank < n) return std::nullopt;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i) positive = v(i, j) > tol.abs;
    if (positive) return InteriorCertificate{v, j, rank};
  }
  return std::nullopt;
}

ConeVerdict verify_cp_factor(const SymMat& m, const NonnegFactor& v, const Tolerance& tol) {
  ConeVerdict verdict{Cone::Cp, Answer::Undecided, {}, {}};
  if (v.order() != m.order()) throw Error(ErrorCode::InvalidArgument, "factor order mismatch");
  const double res = v.residual(m);
  if (res <= tol.threshold(m.max_abs())) {
    verdict.answer = Answer::In;
    verdict.certificate = FactorCertificate{v, res};
  }
  return verdict;
}

}  // namespace copcone
