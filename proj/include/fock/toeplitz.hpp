#pragma once

// Toeplitz operators T_mu f(z) = (alpha/pi) int f(w) conj(K_z(w)) e^{-alpha|w|^2} dmu(w)
// and T_phi = T_{phi dA}: pointwise application, truncation to the
// orthonormal monomial basis, and boundedness/compactness diagnostics on
// F^inf_alpha.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"

namespace fock {

/// Every operator here carries the (alpha/pi) factor, so T_{dA} is the identity.
inline constexpr const char* kToeplitzNormalization = "T_mu carries the (alpha/pi) factor";

struct ToeplitzMatrix {
  /// entries(n, m) = <T_mu e_m, e_n>.
  Eigen::MatrixXcd entries;
  FockWeight weight{1.0};
  std::string source;
  Verdict verdict = Verdict::holds;

  Eigen::Index dimension() const { return entries.rows(); }
  bool is_hermitian(double tol) const;
  /// Eigenvalues of the Hermitian part, ascending.
  Eigen::VectorXd eigenvalues() const;
  /// Singular values, descending.
  Eigen::VectorXd singular_values() const;
};

/// T_mu f(z) e^{-alpha|z|^2/2}, the overflow-free form of the operator.
QuadratureResult apply_toeplitz_weighted(const Measure& mu, const EntireFunction& f, ComplexPoint z,
                                         const FockWeight& w, const QuadratureSpec& spec = {});

/// T_mu f(z). Throws std::overflow_error when the unweighted value is not
/// representable and std::domain_error when the defining integral diverges.
Complex apply_toeplitz(const Measure& mu, const EntireFunction& f, ComplexPoint z,
                       const FockWeight& w, const QuadratureSpec& spec = {});

ToeplitzMatrix toeplitz_matrix(const Measure& mu, int dimension, const FockWeight& w,
                               const QuadratureSpec& spec = {});

struct BoundednessEstimate {
  double upper_proxy = 0.0;  // sup of mu~_1 over the grid
  double lower_proxy = 0.0;  // sup of mu~_2 over the grid
  Growth growth = Growth::converging;
  Verdict verdict = Verdict::holds;  // holds: bounded
};

BoundednessEstimate boundedness_estimate(const Measure& mu, const FockWeight& w, double grid_radius,
                                         const QuadratureSpec& spec = {}, double spacing = 0.25);

struct CompactnessProbe {
  std::vector<std::pair<double, double>> ring_maxima;  // (R, max of mu~_1 on |z| = R)
  Verdict verdict = Verdict::inconclusive;             // holds: decays like a C_0 function
  Eigen::VectorXd singular_values;                     // of a matrix truncation
  double trailing_ratio = 0.0;                         // smallest / largest singular value
};

CompactnessProbe compactness_probe(const Measure& mu, const FockWeight& w,
                                   const std::vector<double>& rings,
                                   const QuadratureSpec& spec = {}, int angles = 64,
                                   int matrix_dimension = 12);

struct IdentityCheck {
  double lhs = 0.0;  // mu~_2(z)
  double rhs = 0.0;  // |<T_mu k_z, k_z>| by quadrature of the F^2 inner product
  double gap = 0.0;
};

IdentityCheck berezin_operator_identity_check(const Measure& mu, ComplexPoint z, const FockWeight& w,
                                              const QuadratureSpec& spec = {});

/// A nonnegative function symbol phi with a declared bound.
struct DensitySymbol {
  std::function<double(Complex)> phi;
  double bound = 0.0;
  double support_radius = kInfinity;

  Measure as_measure() const;
};

/// T_phi f(z) = T_mu f(z) with dmu = phi dA.
Complex function_symbol_apply(const DensitySymbol& phi, const EntireFunction& f, ComplexPoint z,
                              const FockWeight& w, const QuadratureSpec& spec = {});

}  // namespace fock
