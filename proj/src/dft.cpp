#include "signsel/dft.hpp"

#include <fftw3.h>

#include <mutex>
#include <utility>

namespace signsel {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

InverseDft::InverseDft(std::size_t size) : size_(size) {
  std::lock_guard lock(planner_mutex());
  data_ = reinterpret_cast<cplx*>(fftw_alloc_complex(size));
  auto* io = reinterpret_cast<fftw_complex*>(data_);
  plan_ = fftw_plan_dft_1d(static_cast<int>(size), io, io, FFTW_BACKWARD, FFTW_ESTIMATE);
}

InverseDft::~InverseDft() {
  if (plan_ == nullptr && data_ == nullptr) return;
  std::lock_guard lock(planner_mutex());
  if (plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  if (data_ != nullptr) fftw_free(data_);
}

InverseDft::InverseDft(InverseDft&& other) noexcept
    : size_(std::exchange(other.size_, 0)),
      data_(std::exchange(other.data_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

InverseDft& InverseDft::operator=(InverseDft&& other) noexcept {
  if (this != &other) {
    InverseDft tmp(std::move(other));
    std::swap(size_, tmp.size_);
    std::swap(data_, tmp.data_);
    std::swap(plan_, tmp.plan_);
  }
  return *this;
}

std::span<cplx> InverseDft::buffer() { return {data_, size_}; }

void InverseDft::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

}  // namespace signsel
