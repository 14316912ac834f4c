#include "rcork/dense_eig.hpp"

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "rcork/errors.hpp"

namespace rcork {

namespace {

void require_square_pair(const CMatrix& A, const CMatrix& B, const char* who) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw DimensionError(std::string(who) + ": A and B must be square and of equal size");
  }
}

lapack_int as_int(Index v) { return static_cast<lapack_int>(v); }

}  // namespace

GeneralizedEigs generalized_eig(const CMatrix& A, const CMatrix& B, bool want_vectors) {
  require_square_pair(A, B, "generalized_eig");
  const lapack_int n = as_int(A.rows());
  GeneralizedEigs out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) {
    return out;
  }
  CMatrix a = A;
  CMatrix b = B;
  CMatrix vr(want_vectors ? n : 1, want_vectors ? n : 1);
  Complex dummy;
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n, b.data(), n,
                    out.alpha.data(), out.beta.data(), &dummy, 1, vr.data(), want_vectors ? n : 1);
  if (info != 0) {
    throw NumericalError("zggev failed with info = " + std::to_string(info));
  }
  if (want_vectors) {
    out.vectors = std::move(vr);
  }
  return out;
}

GeneralizedSchur generalized_schur(const CMatrix& A, const CMatrix& B) {
  require_square_pair(A, B, "generalized_schur");
  const lapack_int n = as_int(A.rows());
  GeneralizedSchur out;
  out.S = A;
  out.T = B;
  out.Q.resize(n, n);
  out.Z.resize(n, n);
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) {
    return out;
  }
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_zgges(LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, n, out.S.data(), n, out.T.data(), n, &sdim,
                    out.alpha.data(), out.beta.data(), out.Q.data(), n, out.Z.data(), n);
  if (info != 0) {
    throw NumericalError("zgges failed with info = " + std::to_string(info));
  }
  return out;
}

void reorder_schur(GeneralizedSchur& schur, const std::vector<bool>& select) {
  const lapack_int n = as_int(schur.S.rows());
  if (static_cast<lapack_int>(select.size()) != n) {
    throw DimensionError("reorder_schur: selection mask has the wrong length");
  }
  if (n == 0) {
    return;
  }
  std::vector<lapack_logical> mask(select.begin(), select.end());
  lapack_int m = 0;
  double pl = 0.0;
  double pr = 0.0;
  double dif[2] = {0.0, 0.0};
  // The LAPACKE wrapper's workspace query crashes in some OpenBLAS builds for
  // ijob = 0, so the Fortran routine is called with explicit workspace.
  lapack_int ijob = 0;
  lapack_int wantq = 1;
  lapack_int wantz = 1;
  lapack_int lwork = std::max<lapack_int>(1, 2 * n * n);
  lapack_int liwork = std::max<lapack_int>(1, n + 2);
  std::vector<Complex> work(static_cast<std::size_t>(lwork));
  std::vector<lapack_int> iwork(static_cast<std::size_t>(liwork));
  lapack_int ld = n;
  lapack_int nn = n;
  lapack_int info = 0;
  LAPACK_ztgsen(&ijob, &wantq, &wantz, mask.data(), &nn, schur.S.data(), &ld, schur.T.data(), &ld,
                schur.alpha.data(), schur.beta.data(), schur.Q.data(), &ld, schur.Z.data(), &ld, &m, &pl, &pr, dif,
                work.data(), &lwork, iwork.data(), &liwork, &info);
  if (info != 0) {
    throw NumericalError("ztgsen failed to reorder the generalized Schur form (info = " + std::to_string(info) +
                         ")");
  }
}

}  // namespace rcork
