#pragma once

#include <span>
#include <string>
#include <vector>

// Undecimated (a trous / MODWT-style) dyadic wavelet decomposition with
// Daubechies filters, plus the additive multiresolution reconstruction.
// Every component has the length of the input and the components sum back
// to it elementwise.

namespace windcast::wavelet {

enum class Boundary { periodic, reflect };

Boundary boundary_from_string(const std::string& name);
std::string to_string(Boundary b);

// Orthonormal scaling/wavelet filter pair. g is the quadrature mirror of h:
// g[k] = (-1)^k h[L-1-k].
struct WaveletFilter {
  std::string name;
  std::vector<double> h;  // scaling filter, sums to sqrt(2)
  std::vector<double> g;  // wavelet filter, sums to 0
  std::size_t length() const { return h.size(); }
};

// Builds one of the supported filters ("db1".."db10").
WaveletFilter make_filter(const std::string& name);
const std::vector<std::string>& supported_filters();

struct DecompositionSpec {
  WaveletFilter filter;
  int levels = 9;
  Boundary boundary = Boundary::reflect;
  // Dyadic grid: scales 2^j, unit translation.
  static constexpr int dilation = 2;
  static constexpr int translation = 1;
};

// Largest J such that the level-J upsampled filter support (L-1)*2^(J-1)+1
// still fits in a series of length n; 0 when even one level does not fit.
int max_levels(std::size_t n, const WaveletFilter& filter);

struct Decomposition {
  DecompositionSpec spec;
  std::vector<std::vector<double>> details;  // D_1..D_J, each original_length
  std::vector<double> smooth;                // A_J
  std::size_t original_length = 0;
};

// Splits the series into J detail series plus one smooth series, all
// time-aligned with the input. Throws std::invalid_argument for non-finite
// input or a series too short for the requested depth.
Decomposition decompose(std::span<const double> series, const DecompositionSpec& spec);

// Elementwise sum of all details plus the smooth. Throws on length mismatch.
std::vector<double> reconstruct(const Decomposition& d);

}  // namespace windcast::wavelet
