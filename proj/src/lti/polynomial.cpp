#include "solarpump/lti/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::lti {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { strip(); }

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { strip(); }

void Polynomial::strip() {
    auto first = std::find_if(c_.begin(), c_.end(), [](double v) { return v != 0.0; });
    c_.erase(c_.begin(), first);
    if (c_.empty()) c_.push_back(0.0);
}

Polynomial Polynomial::monomial(int degree, double coeff) {
    std::vector<double> c(static_cast<size_t>(degree) + 1, 0.0);
    c[0] = coeff;
    return Polynomial(std::move(c));
}

double Polynomial::coeff_of_power(int k) const {
    int idx = degree() - k;
    if (k < 0 || idx < 0) return 0.0;
    return c_[static_cast<size_t>(idx)];
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (double c : c_) acc = acc * s + c;
    return acc;
}

cplx Polynomial::operator()(cplx s) const {
    cplx acc = 0.0;
    for (double c : c_) acc = acc * s + c;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial{};
    std::vector<double> d;
    int n = degree();
    for (int i = 0; i < n; ++i) d.push_back(c_[static_cast<size_t>(i)] * (n - i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) throw Error(ErrorKind::invalid_input, "cannot normalize the zero polynomial");
    return scaled(1.0 / leading());
}

Polynomial Polynomial::scaled(double k) const {
    std::vector<double> c = c_;
    for (double& v : c) v *= k;
    return Polynomial(std::move(c));
}

int Polynomial::trailing_zeros() const {
    if (is_zero()) return 0;
    int k = 0;
    for (auto it = c_.rbegin(); it != c_.rend() && *it == 0.0; ++it) ++k;
    return k;
}

Polynomial Polynomial::shifted_down(int k) const {
    if (k > trailing_zeros()) throw Error(ErrorKind::invalid_input, "shift exceeds zero roots");
    return Polynomial(std::vector<double>(c_.begin(), c_.end() - k));
}

double Polynomial::norm1() const {
    double s = 0.0;
    for (double v : c_) s += std::abs(v);
    return s;
}

double Polynomial::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const auto& x = a.c_;
    const auto& y = b.c_;
    size_t n = std::max(x.size(), y.size());
    std::vector<double> r(n, 0.0);
    for (size_t i = 0; i < x.size(); ++i) r[n - x.size() + i] += x[i];
    for (size_t i = 0; i < y.size(); ++i) r[n - y.size() + i] += y[i];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-1.0); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

double root_residual(const Polynomial& p, cplx r) {
    double scale = p.norm1() * std::pow(std::max(1.0, std::abs(r)), p.degree());
    return std::abs(p(r)) / scale;
}

namespace {

std::vector<cplx> companion_roots(const Polynomial& p) {
    const auto& c = p.coeffs();
    int n = p.degree();
    if (n == 1) return {cplx(-c[1] / c[0], 0.0)};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) m(0, j) = -c[static_cast<size_t>(j) + 1] / c[0];
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::solver_failure, "eigenvalue iteration did not converge");
    std::vector<cplx> r;
    for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i));
    return r;
}

cplx polish(const Polynomial& p, const Polynomial& dp, cplx r) {
    double best = std::abs(p(r));
    for (int it = 0; it < 8 && best > 0.0; ++it) {
        cplx d = dp(r);
        if (d == cplx(0.0)) break;
        cplx next = r - p(r) / d;
        double val = std::abs(p(next));
        if (!(val < best)) break;
        r = next;
        best = val;
    }
    return r;
}

}  // namespace

std::vector<cplx> poly_roots(const Polynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::invalid_input, "zero polynomial has no finite root set");
    if (p.degree() < 1) throw Error(ErrorKind::invalid_input, "constant polynomial has no roots");

    int z = p.trailing_zeros();
    std::vector<cplx> roots(static_cast<size_t>(z), cplx(0.0, 0.0));
    Polynomial q = p.shifted_down(z);
    if (q.degree() >= 1) {
        Polynomial dq = q.derivative();
        for (cplx r : companion_roots(q)) {
            r = polish(q, dq, r);
            if (std::abs(r.imag()) <= 1e-14 * std::max(1.0, std::abs(r))) r = cplx(r.real(), 0.0);
            roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

Polynomial poly_from_roots(const std::vector<cplx>& roots, double gain) {
    std::vector<cplx> c{cplx(1.0)};
    for (cplx r : roots) {
        std::vector<cplx> next(c.size() + 1, cplx(0.0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<double> out;
    for (cplx v : c) out.push_back(gain * v.real());
    return Polynomial(std::move(out));
}

}  // namespace solarpump::lti
