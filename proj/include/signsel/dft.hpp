#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace signsel {

using cplx = std::complex<double>;

// In-place unnormalized inverse DFT, y[n] = sum_k x[k] e^{+i 2 pi k n / M},
// backed by an FFTW plan. Plans are created under a process-wide lock; a
// single instance must not be used from two threads at once.
class InverseDft {
 public:
  explicit InverseDft(std::size_t size);
  ~InverseDft();
  InverseDft(const InverseDft&) = delete;
  InverseDft& operator=(const InverseDft&) = delete;
  InverseDft(InverseDft&&) noexcept;
  InverseDft& operator=(InverseDft&&) noexcept;

  std::size_t size() const { return size_; }
  std::span<cplx> buffer();
  void execute();

 private:
  std::size_t size_ = 0;
  cplx* data_ = nullptr;
  void* plan_ = nullptr;
};

}  // namespace signsel
