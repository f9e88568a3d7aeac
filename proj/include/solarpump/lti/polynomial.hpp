#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace solarpump::lti {

using cplx = std::complex<double>;

// Real polynomial, coefficients stored highest degree first.
// Leading zeros are stripped on construction; the zero polynomial is {0}.
class Polynomial {
public:
    Polynomial() : c_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double v) { return Polynomial(std::vector<double>{v}); }
    static Polynomial monomial(int degree, double coeff = 1.0);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double leading() const { return c_.front(); }
    // coefficient of s^k (0 when k is out of range)
    double coeff_of_power(int k) const;
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }

    double operator()(double s) const;
    cplx operator()(cplx s) const;

    Polynomial derivative() const;
    Polynomial monic() const;
    Polynomial scaled(double k) const;
    // number of roots at s = 0
    int trailing_zeros() const;
    // divides out s^k; requires k <= trailing_zeros()
    Polynomial shifted_down(int k) const;
    double norm1() const;
    double max_abs() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    std::vector<double> c_;
    void strip();
};

// All roots with multiplicity. Companion-matrix eigenvalues followed by
// Newton polishing against the original coefficients.
std::vector<cplx> poly_roots(const Polynomial& p);

Polynomial poly_from_roots(const std::vector<cplx>& roots, double gain = 1.0);

// |p(r)| / (sum|c_i| * max(1,|r|)^deg)
double root_residual(const Polynomial& p, cplx r);

}  // namespace solarpump::lti
