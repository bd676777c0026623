#ifndef ISOMONO_TYPES_HPP
#define ISOMONO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isomono {

using cx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

/// Thrown on malformed input: inconsistent dimensions, singular leading
/// coefficients, unbalanced shift data, unsupported configurations.
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a numerically tested genericity hypothesis fails
/// (dependent eigenvectors, overlapping spectra, singular Sylvester
/// solution, vanishing pivot coordinate).
class genericity_error : public std::runtime_error {
public:
    explicit genericity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal consistency certificate fails, e.g. a division
/// that must be exact leaves a large remainder.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

/// All numerical thresholds in one record. Operations take this by
/// const reference; the defaults are what the test suites run with.
struct Tolerances {
    double residual = 1e-9;            // generic relative residual gate
    double kernel_simplicity = 1e-6;   // sigma_{m-1}(A(a)) > ks * sigma_1 for a simple root
    double eigvec_condition = 1e8;     // max condition number of an eigenvector matrix
    double congruence = 1e-8;          // |d - round(Re d)| below this means "congruent"
    double congruence_margin = 0.1;    // margin enforced by the random generator
    double sylvester_condition = 1e10; // fail-fast bound for cond(Lambda)
    double spectrum_match = 1e-6;      // eigenvalue matching radius
    double drift = 1e-8;               // ODE eigenvalue drift budget per unit path length
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

inline bool finite(const cmat& a) { return a.allFinite(); }

/// Distance from a complex number to the nearest real integer.
inline double integer_distance(cx d) {
    const double re = d.real() - std::round(d.real());
    return std::hypot(re, d.imag());
}

std::string format_complex(cx z);

}  // namespace isomono

#endif
