#pragma once

// Spin-1 operator algebra on C^3.
//
// Basis: S_z eigenbasis ordered m = +1, 0, -1. All matrices are dense 3x3
// complex; every routine is a pure function of its arguments.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace contextant {

using Complex = std::complex<double>;

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kCompatibilityTolerance = 1e-10;

class ComplexMatrix3 {
public:
    constexpr ComplexMatrix3() = default;
    ComplexMatrix3(std::initializer_list<Complex> row_major);

    static ComplexMatrix3 identity();
    static ComplexMatrix3 diagonal(double a, double b, double c);

    Complex &operator()(int row, int col) { return entries_[3 * row + col]; }
    const Complex &operator()(int row, int col) const { return entries_[3 * row + col]; }

    ComplexMatrix3 adjoint() const;
    Complex trace() const;
    Complex determinant() const;
    /// Frobenius norm.
    double norm() const;
    bool is_hermitian(double tol = kIdentityTolerance) const;

    ComplexMatrix3 &operator+=(const ComplexMatrix3 &o);
    ComplexMatrix3 &operator-=(const ComplexMatrix3 &o);
    ComplexMatrix3 &operator*=(Complex s);

    friend ComplexMatrix3 operator+(ComplexMatrix3 a, const ComplexMatrix3 &b) { return a += b; }
    friend ComplexMatrix3 operator-(ComplexMatrix3 a, const ComplexMatrix3 &b) { return a -= b; }
    friend ComplexMatrix3 operator*(ComplexMatrix3 a, Complex s) { return a *= s; }
    friend ComplexMatrix3 operator*(Complex s, ComplexMatrix3 a) { return a *= s; }
    friend ComplexMatrix3 operator*(const ComplexMatrix3 &a, const ComplexMatrix3 &b);

private:
    std::array<Complex, 9> entries_{};
};

/// Unit vector in R^3. Construction checks the norm.
class Direction {
public:
    Direction(double x, double y, double z);
    /// Rescales (x, y, z) to unit length; throws on the zero vector.
    static Direction normalized(double x, double y, double z);

    static Direction x_axis() { return {1.0, 0.0, 0.0}; }
    static Direction y_axis() { return {0.0, 1.0, 0.0}; }
    static Direction z_axis() { return {0.0, 0.0, 1.0}; }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double dot(const Direction &o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }
    Direction operator-() const { return {-x_, -y_, -z_}; }

private:
    double x_, y_, z_;
};

/// Hermitian, unit trace, positive semidefinite (each within 1e-12).
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix3 &m);
    const ComplexMatrix3 &matrix() const { return m_; }

private:
    ComplexMatrix3 m_;
};

/// Eigenvalues of a Hermitian matrix in descending order, by cyclic Jacobi
/// rotations. Accurate to rounding on repeated eigenvalues.
std::array<double, 3> hermitian_eigenvalues(const ComplexMatrix3 &a);

/// (cos(phi) sin(theta), sin(phi) sin(theta), cos(theta)).
Direction direction_from_angles(double theta, double phi);

ComplexMatrix3 spin_x();
ComplexMatrix3 spin_y();
ComplexMatrix3 spin_z();

/// d.S for the spin-1 matrices; spectrum {+1, 0, -1}.
ComplexMatrix3 spin_operator(const Direction &d);

/// A_d = 2 (d.S)^2 - I; spectrum {+1, +1, -1}.
ComplexMatrix3 dichotomic(const Direction &d);

double commutator_norm(const ComplexMatrix3 &a, const ComplexMatrix3 &b);

/// Re Tr(rho * ops[0] * ops[1] * ...). The operators must pairwise commute
/// within 1e-10, otherwise CompatibilityError.
double expectation(const DensityMatrix &rho, std::span<const ComplexMatrix3> ops);
double expectation(const DensityMatrix &rho, std::initializer_list<ComplexMatrix3> ops);

/// Projector onto the -1 eigenspace of a dichotomic observable, (I - A)/2.
DensityMatrix minus_one_eigenprojector(const ComplexMatrix3 &a);

/// || A_k A_l A_m + I ||_F for a mutually orthogonal triple.
double triple_product_check(const Direction &k, const Direction &l, const Direction &m);

} // namespace contextant
