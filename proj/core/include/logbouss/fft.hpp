#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace logbouss {

namespace detail {
void* fftw_allocate(std::size_t bytes);
void fftw_release(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage, so buffers can be handed to
/// precomputed FFTW plans through the new-array execute interface.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    return static_cast<T*>(detail::fftw_allocate(count * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fftw_release(p); }

  template <class U>
  friend bool operator==(const FftwAllocator&, const FftwAllocator<U>&) {
    return true;
  }
};

using Complex = std::complex<double>;
using RealVector = std::vector<double, FftwAllocator<double>>;
using ComplexVector = std::vector<Complex, FftwAllocator<Complex>>;

/// Real 2D transform pair for one grid size.
///
/// forward() returns Fourier-series coefficients (scaled by 1/n^2), so the
/// coefficient of a unit-amplitude exp(i k.x) is exactly 1. Plans are built
/// once per size with FFTW_ESTIMATE; execution is thread-safe.
class FourierTransform {
 public:
  static const FourierTransform& for_size(int n);

  int n() const { return n_; }

  void forward(const RealVector& values, ComplexVector& coeffs) const;
  void inverse(const ComplexVector& coeffs, RealVector& values) const;

  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  ~FourierTransform();

 private:
  explicit FourierTransform(int n);

  int n_;
  void* r2c_ = nullptr;
  void* c2r_ = nullptr;
};

}  // namespace logbouss
