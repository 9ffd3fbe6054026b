#include "xms/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <cmath>

namespace xms {

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

// ---------------------------------------------------------------- cyclotomic

namespace {

// Exact division of integer polynomials, quotient known to be integral.
std::vector<mpz_class> poly_divide_exact(std::vector<mpz_class> num,
                                         const std::vector<mpz_class>& den) {
    std::vector<mpz_class> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    for (long i = static_cast<long>(num.size()) - 1;
         i >= static_cast<long>(den.size()) - 1; --i) {
        mpz_class c = num[i] / den.back();
        long shift = i - (static_cast<long>(den.size()) - 1);
        q[shift] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j)
                num[shift + j] -= c * den[j];
    }
    for (auto& c : num)
        if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return q;
}

std::map<unsigned, std::vector<mpz_class>> g_phi_cache;
std::mutex g_phi_mutex;

} // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    // fill every divisor of n in increasing order
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || g_phi_cache.count(d)) continue;
        std::vector<mpz_class> num(d + 1, 0); // x^d - 1
        num[0] = -1;
        num[d] = 1;
        for (unsigned e = 1; e < d; ++e)
            if (d % e == 0)
                num = poly_divide_exact(std::move(num), g_phi_cache.at(e));
        g_phi_cache.emplace(d, std::move(num));
    }
    return g_phi_cache.at(n);
}

// ------------------------------------------------------------------- Scalar

namespace {

// Reduce a rational polynomial modulo Phi_n; result has deg Phi_n entries.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> p, unsigned n) {
    const auto& phi = cyclotomic_polynomial(n);
    size_t deg = phi.size() - 1; // Phi_n is monic of degree phi(n)
    if (p.size() < deg) p.resize(deg, Rational(0));
    for (long i = static_cast<long>(p.size()) - 1; i >= static_cast<long>(deg); --i) {
        Rational c = p[i];
        if (c != 0)
            for (size_t j = 0; j < phi.size(); ++j)
                p[i - deg + j] -= c * Rational(phi[j]);
        p.pop_back();
    }
    p.resize(deg, Rational(0));
    return p;
}

bool poly_is_zero(const std::vector<Rational>& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

// Polynomial division over Q: returns {quotient, remainder}.
std::pair<std::vector<Rational>, std::vector<Rational>>
poly_divmod(std::vector<Rational> num, const std::vector<Rational>& den) {
    long dd = static_cast<long>(den.size()) - 1;
    while (dd >= 0 && den[dd] == 0) --dd;
    if (dd < 0) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> q;
    long dn = static_cast<long>(num.size()) - 1;
    while (dn >= 0 && (dn >= static_cast<long>(num.size()) || num[dn] == 0)) --dn;
    if (dn < dd) return {std::vector<Rational>{}, std::move(num)};
    q.assign(dn - dd + 1, Rational(0));
    for (long i = dn; i >= dd; --i) {
        if (num[i] == 0) continue;
        Rational c = num[i] / den[dd];
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    return {std::move(q), std::move(num)};
}

} // namespace

Scalar::Scalar(long num, long den) : order_(1), coeffs_(1, Rational(num, den)) {
    coeffs_[0].canonicalize();
}

Scalar Scalar::from_coeffs(unsigned order, std::vector<Rational> coeffs) {
    Scalar s;
    s.order_ = order;
    s.coeffs_ = reduce_mod_phi(std::move(coeffs), order);
    return s;
}

Scalar Scalar::zero(unsigned order) { return from_coeffs(order, {}); }

Scalar Scalar::one(unsigned order) {
    return from_coeffs(order, {Rational(1)});
}

Scalar Scalar::root_of_unity(unsigned order, long k) {
    long n = static_cast<long>(order);
    long kk = ((k % n) + n) % n;
    std::vector<Rational> p(static_cast<size_t>(kk) + 1, Rational(0));
    p[static_cast<size_t>(kk)] = 1;
    return from_coeffs(order, std::move(p));
}

bool Scalar::is_zero() const { return poly_is_zero(coeffs_); }

bool Scalar::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational Scalar::rational_part() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Scalar Scalar::lifted(unsigned m) const {
    if (m == order_) return *this;
    if (m % order_ != 0)
        throw std::invalid_argument("cyclotomic order does not divide target");
    unsigned stride = m / order_;
    // zeta_order = zeta_m^stride
    std::vector<Rational> p;
    p.resize(coeffs_.size() == 0 ? 1 : (coeffs_.size() - 1) * stride + 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        p[i * stride] += coeffs_[i];
    return from_coeffs(m, std::move(p));
}

Scalar Scalar::normalized() const {
    if (order_ != 1 && is_rational()) {
        Scalar s;
        s.order_ = 1;
        s.coeffs_.assign(1, coeffs_.empty() ? Rational(0) : coeffs_[0]);
        return s;
    }
    return *this;
}

void Scalar::align(const Scalar& a, const Scalar& b, Scalar& la, Scalar& lb) {
    unsigned m = std::lcm(a.order_, b.order_);
    la = a.lifted(m);
    lb = b.lifted(m);
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Scalar a, b;
    align(*this, o, a, b);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar a = *this;
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_one()) return o;
    if (o.is_one()) return *this;
    if (is_zero() || o.is_zero()) return zero(std::lcm(order_, o.order_));
    Scalar a, b;
    align(*this, o, a, b);
    std::vector<Rational> p(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            if (b.coeffs_[j] != 0) p[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_coeffs(a.order_, std::move(p));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    if (is_one()) return *this;
    if (is_rational()) {
        Scalar s;
        s.order_ = order_;
        s.coeffs_.assign(coeffs_.size(), Rational(0));
        s.coeffs_[0] = Rational(1) / coeffs_[0];
        return s;
    }
    // extended Euclid in Q[x] against Phi_n
    const auto& phiz = cyclotomic_polynomial(order_);
    std::vector<Rational> r0(phiz.size());
    for (size_t i = 0; i < phiz.size(); ++i) r0[i] = Rational(phiz[i]);
    std::vector<Rational> r1 = coeffs_;
    std::vector<Rational> s0{}, s1{Rational(1)}; // coefficients on *this
    while (true) {
        long d = static_cast<long>(r1.size()) - 1;
        while (d >= 0 && r1[d] == 0) --d;
        if (d < 0) throw std::domain_error("scalar not invertible mod Phi_n");
        if (d == 0) {
            // r1 = constant: inverse = s1 / r1[0]
            for (auto& c : s1) c /= r1[0];
            return from_coeffs(order_, std::move(s1));
        }
        auto [q, rem] = poly_divmod(r0, r1);
        // s_new = s0 - q*s1
        std::vector<Rational> sn(std::max(s0.size(), q.size() + s1.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) sn[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) sn[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(sn);
    }
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(order_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    Scalar a, b;
    align(*this, o, a, b);
    return a.coeffs_ == b.coeffs_;
}

std::string Scalar::to_string() const {
    if (is_rational()) return rational_to_string(coeffs_.empty() ? Rational(0) : coeffs_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        Rational c = coeffs_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (i == 0) os << rational_to_string(a);
        else {
            if (a != 1) os << rational_to_string(a) << "*";
            os << "z" << order_ << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::pair<double, double> Scalar::approx() const {
    double re = 0, im = 0;
    const double two_pi = 6.283185307179586476925287;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        double c = coeffs_[i].get_d();
        double ang = two_pi * static_cast<double>(i) / static_cast<double>(order_);
        re += c * std::cos(ang);
        im += c * std::sin(ang);
    }
    return {re, im};
}

} // namespace xms
