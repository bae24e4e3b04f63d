#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include <Eigen/Dense>

#include "hsp/qsim.hpp"

namespace hsp {

namespace {

Eigen::MatrixXcd dft_matrix(i64 n) {
  Eigen::MatrixXcd f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (i64 j = 0; j < n; ++j) {
    for (i64 k = 0; k < n; ++k) {
      // Reduce jk first so the angle stays small and exact in double.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      f(j, k) = std::polar(norm, angle);
    }
  }
  return f;
}

// Applies F_{n_axis} along one axis of a row-major tensor.
void apply_along_axis(Eigen::VectorXcd& state, std::span<const i64> dims, std::size_t axis,
                      const Eigen::MatrixXcd& f) {
  i64 inner = 1;
  for (std::size_t i = axis + 1; i < dims.size(); ++i) inner *= dims[i];
  const i64 n = dims[axis];
  const i64 outer = state.size() / (n * inner);
  for (i64 o = 0; o < outer; ++o) {
    // Block of n x inner in row-major is an inner x n column-major matrix.
    Eigen::Map<Eigen::MatrixXcd> block(state.data() + o * n * inner, inner, n);
    block = block * f.transpose();
  }
}

}  // namespace

DenseDistribution dense_reference_distribution(CosetOracle& oracle, const Domain& domain,
                                               std::span<const i64> dims) {
  const auto domain_dims = dims_of(domain);
  if (!std::equal(dims.begin(), dims.end(), domain_dims.begin(), domain_dims.end())) {
    throw Error(Errc::DimensionMismatch, "Fourier dims differ from the domain");
  }
  const i64 size = domain_size(dims, kDenseLimit);

  // psi_1 = |D|^{-1/2} sum_g |g>|f(g)>; measuring the label register leaves
  // label l with probability |class_l| / |D| and the normalized class state.
  std::unordered_map<Label, std::vector<i64>, LabelHash> classes;
  for (i64 k = 0; k < size; ++k) {
    const Tuple t = unpack_tuple(dims, static_cast<u64>(k));
    classes[oracle.simulate(embed(oracle.law(), domain, t))].push_back(k);
  }

  std::vector<Eigen::MatrixXcd> dft;
  for (i64 n : dims) dft.push_back(dft_matrix(n));

  DenseDistribution out{std::vector<i64>(dims.begin(), dims.end()),
                        std::vector<double>(static_cast<std::size_t>(size), 0.0)};
  Eigen::VectorXcd state(size);
  for (const auto& [label, members] : classes) {
    state.setZero();
    const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
    for (i64 k : members) state[k] = amp;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) apply_along_axis(state, dims, axis, dft[axis]);
    const double weight = static_cast<double>(members.size()) / static_cast<double>(size);
    for (i64 k = 0; k < size; ++k) out.probabilities[static_cast<std::size_t>(k)] += weight * std::norm(state[k]);
  }
  return out;
}

}  // namespace hsp
