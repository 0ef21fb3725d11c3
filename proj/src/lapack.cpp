#include "lapack.hpp"

#include <algorithm>
#include <string>
#include <vector>

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* w, std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr, std::complex<double>* work,
            const int* lwork, double* rwork, int* info);

void dgeev_(const char* jobvl, const char* jobvr, const int* n, double* a, const int* lda,
            double* wr, double* wi, double* vl, const int* ldvl, double* vr, const int* ldvr,
            double* work, const int* lwork, int* info);

void zheevd_(const char* jobz, const char* uplo, const int* n, std::complex<double>* a,
             const int* lda, double* w, std::complex<double>* work, const int* lwork,
             double* rwork, const int* lrwork, int* iwork, const int* liwork, int* info);

void zgesdd_(const char* jobz, const int* m, const int* n, std::complex<double>* a,
             const int* lda, double* s, std::complex<double>* u, const int* ldu,
             std::complex<double>* vt, const int* ldvt, std::complex<double>* work,
             const int* lwork, double* rwork, int* iwork, int* info);

void zgetrf_(const int* m, const int* n, std::complex<double>* a, const int* lda, int* ipiv,
             int* info);

void zgecon_(const char* norm, const int* n, const std::complex<double>* a, const int* lda,
             const double* anorm, double* rcond, std::complex<double>* work, double* rwork,
             int* info);

void zgesv_(const int* n, const int* nrhs, std::complex<double>* a, const int* lda, int* ipiv,
            std::complex<double>* b, const int* ldb, int* info);
}

namespace sturmet::lapack {

namespace {
void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw InputMismatch(std::string(who) + ": matrix must be square");
  if (m.size() == 0) throw InputMismatch(std::string(who) + ": empty matrix");
}
}  // namespace

EigResult eig(const Matrix& m, bool want_vectors) {
  require_square(m, "lapack::eig");
  const int n = static_cast<int>(m.rows());
  Matrix a = m;
  EigResult out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);

  const char jobvl = 'N';
  const char jobvr = want_vectors ? 'V' : 'N';
  const int ldvl = 1;
  const int ldvr = want_vectors ? n : 1;
  std::vector<double> rwork(2 * n);
  int info = 0;

  Complex wk_query;
  int lwork = -1;
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, out.values.data(), nullptr, &ldvl,
         want_vectors ? out.vectors.data() : nullptr, &ldvr, &wk_query, &lwork, rwork.data(),
         &info);
  if (info != 0) throw EigensolverFailure("zgeev workspace query failed, info=" + std::to_string(info));

  lwork = std::max(2 * n, static_cast<int>(wk_query.real()));
  std::vector<Complex> work(lwork);
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, out.values.data(), nullptr, &ldvl,
         want_vectors ? out.vectors.data() : nullptr, &ldvr, work.data(), &lwork, rwork.data(),
         &info);
  if (info != 0) throw EigensolverFailure("zgeev failed, info=" + std::to_string(info));
  return out;
}

EigResult eig_real(const RealMatrix& m, bool want_vectors) {
  if (m.rows() != m.cols() || m.size() == 0)
    throw InputMismatch("lapack::eig_real: square non-empty matrix required");
  const int n = static_cast<int>(m.rows());
  RealMatrix a = m;
  RealVector wr(n), wi(n);
  RealMatrix vr;
  if (want_vectors) vr.resize(n, n);

  const char jobvl = 'N';
  const char jobvr = want_vectors ? 'V' : 'N';
  const int ldvl = 1;
  const int ldvr = want_vectors ? n : 1;
  int info = 0;
  double wk_query = 0.0;
  int lwork = -1;
  dgeev_(&jobvl, &jobvr, &n, a.data(), &n, wr.data(), wi.data(), nullptr, &ldvl,
         want_vectors ? vr.data() : nullptr, &ldvr, &wk_query, &lwork, &info);
  if (info != 0) throw EigensolverFailure("dgeev workspace query failed, info=" + std::to_string(info));
  lwork = std::max(4 * n, static_cast<int>(wk_query));
  std::vector<double> work(lwork);
  dgeev_(&jobvl, &jobvr, &n, a.data(), &n, wr.data(), wi.data(), nullptr, &ldvl,
         want_vectors ? vr.data() : nullptr, &ldvr, work.data(), &lwork, &info);
  if (info != 0) throw EigensolverFailure("dgeev failed, info=" + std::to_string(info));

  EigResult out;
  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = Complex{wr[k], wi[k]};
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
      if (wi[k] > 0.0 && k + 1 < n) {
        // packed conjugate pair: columns k, k+1 hold Re and Im
        out.vectors.col(k) = vr.col(k).cast<Complex>() + kImag * vr.col(k + 1).cast<Complex>();
        out.vectors.col(k + 1) = out.vectors.col(k).conjugate();
        ++k;
      } else {
        out.vectors.col(k) = vr.col(k).cast<Complex>();
      }
    }
  }
  return out;
}

HermEigResult eig_hermitian(const Matrix& m) {
  require_square(m, "lapack::eig_hermitian");
  const int n = static_cast<int>(m.rows());
  HermEigResult out;
  out.vectors = m;
  out.values.resize(n);

  const char jobz = 'V';
  const char uplo = 'L';
  int info = 0;
  Complex wk_query;
  double rwk_query = 0.0;
  int iwk_query = 0;
  int lwork = -1, lrwork = -1, liwork = -1;
  zheevd_(&jobz, &uplo, &n, out.vectors.data(), &n, out.values.data(), &wk_query, &lwork,
          &rwk_query, &lrwork, &iwk_query, &liwork, &info);
  if (info != 0)
    throw EigensolverFailure("zheevd workspace query failed, info=" + std::to_string(info));

  lwork = static_cast<int>(wk_query.real());
  lrwork = static_cast<int>(rwk_query);
  liwork = iwk_query;
  std::vector<Complex> work(std::max(1, lwork));
  std::vector<double> rwork(std::max(1, lrwork));
  std::vector<int> iwork(std::max(1, liwork));
  zheevd_(&jobz, &uplo, &n, out.vectors.data(), &n, out.values.data(), work.data(), &lwork,
          rwork.data(), &lrwork, iwork.data(), &liwork, &info);
  if (info != 0) throw EigensolverFailure("zheevd failed, info=" + std::to_string(info));
  return out;
}

RealVector singular_values(const Matrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (m.size() == 0) throw InputMismatch("lapack::singular_values: empty matrix");
  Matrix a = m;
  const int mn = std::min(rows, cols);
  RealVector s(mn);

  const char jobz = 'N';
  const int ldu = 1, ldvt = 1;
  std::vector<double> rwork(std::max(1, 7 * mn));
  std::vector<int> iwork(8 * mn);
  int info = 0;
  Complex wk_query;
  int lwork = -1;
  zgesdd_(&jobz, &rows, &cols, a.data(), &rows, s.data(), nullptr, &ldu, nullptr, &ldvt,
          &wk_query, &lwork, rwork.data(), iwork.data(), &info);
  if (info != 0)
    throw EigensolverFailure("zgesdd workspace query failed, info=" + std::to_string(info));
  lwork = static_cast<int>(wk_query.real());
  std::vector<Complex> work(std::max(1, lwork));
  zgesdd_(&jobz, &rows, &cols, a.data(), &rows, s.data(), nullptr, &ldu, nullptr, &ldvt,
          work.data(), &lwork, rwork.data(), iwork.data(), &info);
  if (info != 0) throw EigensolverFailure("zgesdd failed, info=" + std::to_string(info));
  return s;
}

double rcond_1norm(const Matrix& m) {
  require_square(m, "lapack::rcond_1norm");
  const int n = static_cast<int>(m.rows());
  Matrix a = m;
  const double anorm = a.cwiseAbs().colwise().sum().maxCoeff();

  std::vector<int> ipiv(n);
  int info = 0;
  zgetrf_(&n, &n, a.data(), &n, ipiv.data(), &info);
  if (info > 0) return 0.0;  // exactly singular
  if (info < 0) throw EigensolverFailure("zgetrf failed, info=" + std::to_string(info));

  const char norm = '1';
  double rcond = 0.0;
  std::vector<Complex> work(2 * n);
  std::vector<double> rwork(2 * n);
  zgecon_(&norm, &n, a.data(), &n, &anorm, &rcond, work.data(), rwork.data(), &info);
  if (info != 0) throw EigensolverFailure("zgecon failed, info=" + std::to_string(info));
  return rcond;
}

Vector solve(Matrix a, Vector b) {
  require_square(a, "lapack::solve");
  if (a.rows() != b.size()) throw InputMismatch("lapack::solve: dimension mismatch");
  const int n = static_cast<int>(a.rows());
  const int nrhs = 1;
  std::vector<int> ipiv(n);
  int info = 0;
  zgesv_(&n, &nrhs, a.data(), &n, ipiv.data(), b.data(), &n, &info);
  if (info != 0) throw EigensolverFailure("zgesv failed, info=" + std::to_string(info));
  return b;
}

}  // namespace sturmet::lapack
