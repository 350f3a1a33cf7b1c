#include "logbouss/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "logbouss/error.hpp"

namespace logbouss {

namespace detail {

void* fftw_allocate(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_release(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierTransform::FourierTransform(int n) : n_(n) {
  const std::size_t nc = static_cast<std::size_t>(n) * (n / 2 + 1);
  RealVector real(static_cast<std::size_t>(n) * n);
  ComplexVector cplx(nc);
  auto* in = real.data();
  auto* out = reinterpret_cast<fftw_complex*>(cplx.data());
  // FFTW_ESTIMATE keeps the chosen algorithm, and hence every rounded bit,
  // identical from run to run.
  r2c_ = fftw_plan_dft_r2c_2d(n, n, in, out, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_2d(n, n, out, in, FFTW_ESTIMATE);
  if (r2c_ == nullptr || c2r_ == nullptr) throw Error("FFTW plan creation failed");
}

// Instances live in the size cache until process exit.
FourierTransform::~FourierTransform() {
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

const FourierTransform& FourierTransform::for_size(int n) {
  std::lock_guard lock(planner_mutex());
  static std::map<int, std::unique_ptr<FourierTransform>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<FourierTransform>(new FourierTransform(n))).first;
  }
  return *it->second;
}

void FourierTransform::forward(const RealVector& values, ComplexVector& coeffs) const {
  const std::size_t nr = static_cast<std::size_t>(n_) * n_;
  const std::size_t nc = static_cast<std::size_t>(n_) * (n_ / 2 + 1);
  if (values.size() != nr) throw GridMismatch("forward transform: wrong input size");
  coeffs.resize(nc);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(nr);
  for (auto& c : coeffs) c *= scale;
}

void FourierTransform::inverse(const ComplexVector& coeffs, RealVector& values) const {
  const std::size_t nr = static_cast<std::size_t>(n_) * n_;
  const std::size_t nc = static_cast<std::size_t>(n_) * (n_ / 2 + 1);
  if (coeffs.size() != nc) throw GridMismatch("inverse transform: wrong input size");
  // c2r destroys its input.
  thread_local ComplexVector scratch;
  scratch.assign(coeffs.begin(), coeffs.end());
  values.resize(nr);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), values.data());
}

}  // namespace logbouss
