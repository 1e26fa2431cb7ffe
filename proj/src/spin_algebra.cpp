#include "contextant/spin_algebra.hpp"

#include "contextant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace contextant {

ComplexMatrix3::ComplexMatrix3(std::initializer_list<Complex> row_major) {
    if (row_major.size() != 9)
        throw PreconditionError("ComplexMatrix3 needs 9 entries, got " + std::to_string(row_major.size()));
    std::copy(row_major.begin(), row_major.end(), entries_.begin());
}

ComplexMatrix3 ComplexMatrix3::identity() { return diagonal(1.0, 1.0, 1.0); }

ComplexMatrix3 ComplexMatrix3::diagonal(double a, double b, double c) {
    ComplexMatrix3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

ComplexMatrix3 ComplexMatrix3::adjoint() const {
    ComplexMatrix3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex ComplexMatrix3::trace() const { return entries_[0] + entries_[4] + entries_[8]; }

Complex ComplexMatrix3::determinant() const {
    const auto &m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double ComplexMatrix3::norm() const {
    double s = 0.0;
    for (const auto &e : entries_)
        s += std::norm(e);
    return std::sqrt(s);
}

bool ComplexMatrix3::is_hermitian(double tol) const { return (*this - adjoint()).norm() <= tol; }

ComplexMatrix3 &ComplexMatrix3::operator+=(const ComplexMatrix3 &o) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += o.entries_[i];
    return *this;
}

ComplexMatrix3 &ComplexMatrix3::operator-=(const ComplexMatrix3 &o) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= o.entries_[i];
    return *this;
}

ComplexMatrix3 &ComplexMatrix3::operator*=(Complex s) {
    for (auto &e : entries_)
        e *= s;
    return *this;
}

ComplexMatrix3 operator*(const ComplexMatrix3 &a, const ComplexMatrix3 &b) {
    ComplexMatrix3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Direction::Direction(double x, double y, double z) : x_{x}, y_{y}, z_{z} {
    const double n2 = x * x + y * y + z * z;
    if (!(std::abs(n2 - 1.0) <= kIdentityTolerance))
        throw PreconditionError("Direction is not unit: |v|^2 = " + std::to_string(n2));
}

Direction Direction::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n))
        throw PreconditionError("cannot normalize a zero or non-finite vector");
    return {x / n, y / n, z / n};
}

DensityMatrix::DensityMatrix(const ComplexMatrix3 &m) : m_{m} {
    if (!m.is_hermitian(kIdentityTolerance))
        throw DomainError("density matrix is not Hermitian");
    const Complex tr = m.trace();
    if (std::abs(tr.real() - 1.0) > kIdentityTolerance || std::abs(tr.imag()) > kIdentityTolerance)
        throw DomainError("density matrix trace is not 1");
    const auto ev = hermitian_eigenvalues(m);
    if (ev[2] < -kIdentityTolerance)
        throw DomainError("density matrix has a negative eigenvalue: " + std::to_string(ev[2]));
}

std::array<double, 3> hermitian_eigenvalues(const ComplexMatrix3 &a) {
    // Cyclic Jacobi: each rotation zeroes one off-diagonal entry after a phase change.
    ComplexMatrix3 m = a;
    constexpr std::array<std::pair<int, int>, 3> pivots{{{0, 1}, {0, 2}, {1, 2}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
        const double diag = std::norm(m(0, 0)) + std::norm(m(1, 1)) + std::norm(m(2, 2));
        if (off <= 1e-34 * diag || off == 0.0)
            break;
        for (const auto &[p, q] : pivots) {
            const double mag = std::abs(m(p, q));
            if (mag == 0.0)
                continue;
            const Complex phase = m(p, q) / mag;
            const double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            ComplexMatrix3 j = ComplexMatrix3::identity();
            j(p, p) = c;
            j(p, q) = s;
            j(q, p) = -s * std::conj(phase);
            j(q, q) = c * std::conj(phase);
            m = j.adjoint() * m * j;
        }
    }
    std::array<double, 3> ev{m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
    std::sort(ev.begin(), ev.end(), std::greater<>{});
    return ev;
}

Direction direction_from_angles(double theta, double phi) {
    const double s = std::sin(theta);
    return {std::cos(phi) * s, std::sin(phi) * s, std::cos(theta)};
}

ComplexMatrix3 spin_x() {
    const double h = std::numbers::sqrt2 / 2.0;
    return {0.0, h, 0.0, h, 0.0, h, 0.0, h, 0.0};
}

ComplexMatrix3 spin_y() {
    const Complex h{0.0, std::numbers::sqrt2 / 2.0};
    return {0.0, -h, 0.0, h, 0.0, -h, 0.0, h, 0.0};
}

ComplexMatrix3 spin_z() { return ComplexMatrix3::diagonal(1.0, 0.0, -1.0); }

ComplexMatrix3 spin_operator(const Direction &d) {
    return d.x() * spin_x() + d.y() * spin_y() + d.z() * spin_z();
}

ComplexMatrix3 dichotomic(const Direction &d) {
    const ComplexMatrix3 s = spin_operator(d);
    return 2.0 * (s * s) - ComplexMatrix3::identity();
}

double commutator_norm(const ComplexMatrix3 &a, const ComplexMatrix3 &b) { return (a * b - b * a).norm(); }

double expectation(const DensityMatrix &rho, std::span<const ComplexMatrix3> ops) {
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            const double c = commutator_norm(ops[i], ops[j]);
            if (c > kCompatibilityTolerance)
                throw CompatibilityError("operators " + std::to_string(i) + " and " + std::to_string(j) +
                                         " do not commute (||[A,B]|| = " + std::to_string(c) + ")");
        }
    ComplexMatrix3 prod = rho.matrix();
    for (const auto &op : ops)
        prod = prod * op;
    return prod.trace().real();
}

double expectation(const DensityMatrix &rho, std::initializer_list<ComplexMatrix3> ops) {
    return expectation(rho, std::span<const ComplexMatrix3>(ops.begin(), ops.size()));
}

DensityMatrix minus_one_eigenprojector(const ComplexMatrix3 &a) {
    const ComplexMatrix3 id = ComplexMatrix3::identity();
    if (!a.is_hermitian(kCompatibilityTolerance) || (a * a - id).norm() > kCompatibilityTolerance ||
        std::abs(a.trace() - Complex{1.0}) > kCompatibilityTolerance)
        throw DomainError("minus_one_eigenprojector: operator is not dichotomic with spectrum {+1, +1, -1}");
    // A^2 = I and Tr A = 1 leave exactly one -1 eigenvalue, so (I - A)/2 is rank one.
    return DensityMatrix{0.5 * (id - a)};
}

double triple_product_check(const Direction &k, const Direction &l, const Direction &m) {
    const double kl = k.dot(l), km = k.dot(m), lm = l.dot(m);
    if (std::abs(kl) > kCompatibilityTolerance || std::abs(km) > kCompatibilityTolerance ||
        std::abs(lm) > kCompatibilityTolerance)
        throw PreconditionError("triple_product_check: directions are not mutually orthogonal");
    return (dichotomic(k) * dichotomic(l) * dichotomic(m) + ComplexMatrix3::identity()).norm();
}

} // namespace contextant
