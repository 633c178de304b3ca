#pragma once

// Fortran LAPACK entry points. Character arguments carry a trailing hidden
// length (gfortran ABI).

#include <complex>
#include <cstddef>

extern "C" {

void dsbev_(const char* jobz, const char* uplo, const int* n, const int* kd, double* ab,
            const int* ldab, double* w, double* z, const int* ldz, double* work, int* info,
            std::size_t, std::size_t);

void dgebal_(const char* job, const int* n, double* a, const int* lda, int* ilo, int* ihi,
             double* scale, int* info, std::size_t);
void dgehrd_(const int* n, const int* ilo, const int* ihi, double* a, const int* lda, double* tau,
             double* work, const int* lwork, int* info);
void dhseqr_(const char* job, const char* compz, const int* n, const int* ilo, const int* ihi,
             double* h, const int* ldh, double* wr, double* wi, double* z, const int* ldz,
             double* work, const int* lwork, int* info, std::size_t, std::size_t);

void zgebal_(const char* job, const int* n, std::complex<double>* a, const int* lda, int* ilo,
             int* ihi, double* scale, int* info, std::size_t);
void zgehrd_(const int* n, const int* ilo, const int* ihi, std::complex<double>* a,
             const int* lda, std::complex<double>* tau, std::complex<double>* work,
             const int* lwork, int* info);
void zhseqr_(const char* job, const char* compz, const int* n, const int* ilo, const int* ihi,
             std::complex<double>* h, const int* ldh, std::complex<double>* w,
             std::complex<double>* z, const int* ldz, std::complex<double>* work,
             const int* lwork, int* info, std::size_t, std::size_t);
}
