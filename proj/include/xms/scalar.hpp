// Exact scalars: elements of the cyclotomic field Q(zeta_n), reduced
// modulo the n-th cyclotomic polynomial. Order n = 1 degenerates to
// plain rationals. All arithmetic is exact (GMP rationals underneath).
#ifndef XMS_SCALAR_HPP
#define XMS_SCALAR_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

namespace xms {

using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

// Integer-coefficient cyclotomic polynomial Phi_n, ascending coefficients.
// Cached; computed by exact division of x^n - 1 by the proper divisors' Phi_d.
const std::vector<mpz_class>& cyclotomic_polynomial(unsigned n);

class Scalar {
public:
    Scalar() : order_(1), coeffs_(1, Rational(0)) {}
    explicit Scalar(const Rational& r) : order_(1), coeffs_(1, r) {}
    Scalar(long num, long den);

    // Element given by coefficient vector in Q[x]/Phi_n (ascending powers of
    // zeta_n). Shorter vectors are zero-padded, longer ones reduced.
    static Scalar from_coeffs(unsigned order, std::vector<Rational> coeffs);
    static Scalar zero(unsigned order = 1);
    static Scalar one(unsigned order = 1);
    // zeta_n^k
    static Scalar root_of_unity(unsigned order, long k = 1);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;     // lies in Q regardless of stored order
    Rational rational_part() const; // valid when is_rational()

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar inverse() const;       // throws std::domain_error on zero
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    Scalar pow(long e) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Re-express in Q(zeta_m); requires order() | m.
    Scalar lifted(unsigned m) const;
    // Smallest stored form (drops to a divisor order when possible is not
    // attempted; only trims order-1 representables).
    Scalar normalized() const;

    std::string to_string() const;   // e.g. "3/2", "z4^1 - 1/2"
    // Numeric approximation (re, im) for human-facing output only.
    std::pair<double, double> approx() const;

private:
    unsigned order_;
    std::vector<Rational> coeffs_; // size = deg Phi_order, ascending
    static void align(const Scalar& a, const Scalar& b, Scalar& la, Scalar& lb);
};

} // namespace xms

#endif
