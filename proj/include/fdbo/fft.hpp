#pragma once

#include <complex>
#include <vector>

namespace fdbo::fft {

// Unnormalized complex DFTs of length in.size(); forward uses e^{-2πijk/n}.
// Plans are cached per length and shared between threads.
void forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out);
void backward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out);

}  // namespace fdbo::fft
