#include "fdbo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fdbo::fft {
namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  // planning with FFTW_ESTIMATE does not touch the scratch arrays' contents
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  fftw_plan plan = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  if (!plan) throw std::runtime_error("fftw: could not create plan");
  cache.emplace(std::make_pair(n, sign), plan);
  return plan;
}

void run(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out, int sign) {
  const int n = static_cast<int>(in.size());
  out.resize(in.size());
  fftw_plan plan = plan_for(n, sign);
  // new-array execute is thread safe; the input is not modified by out-of-place c2c
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (src == dst) {
    std::vector<std::complex<double>> tmp(in);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), dst);
    return;
  }
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) {
  run(in, out, FFTW_FORWARD);
}

void backward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) {
  run(in, out, FFTW_BACKWARD);
}

}  // namespace fdbo::fft
