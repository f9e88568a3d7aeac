#include "solarpump/lti/transfer_function.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "solarpump/error.hpp"

namespace solarpump::lti {

TransferFunction::TransferFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw Error(ErrorKind::degenerate_system, "transfer function has a zero denominator");
    double lead = den.leading();
    num_ = num.scaled(1.0 / lead);
    den_ = den.scaled(1.0 / lead);
}

double TransferFunction::dc_gain() const {
    double d = den_(0.0);
    double n = num_(0.0);
    if (d == 0.0) {
        if (n == 0.0) {
            // cancel common zeros at the origin before taking the limit
            int k = std::min(num_.trailing_zeros(), den_.trailing_zeros());
            TransferFunction r(num_.shifted_down(k), den_.shifted_down(k));
            return r.dc_gain();
        }
        return n > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return n / d;
}

std::vector<cplx> TransferFunction::poles() const {
    if (den_.degree() < 1) return {};
    return poly_roots(den_);
}

std::vector<cplx> TransferFunction::zeros() const {
    if (num_.is_zero() || num_.degree() < 1) return {};
    return poly_roots(num_);
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

TransferFunction operator+(const TransferFunction& a, const TransferFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

namespace {

void append_coeffs(std::string& out, const Polynomial& p) {
    char buf[64];
    for (double c : p.coeffs()) {
        auto res = std::to_chars(buf, buf + sizeof buf, c);
        out.push_back(' ');
        out.append(buf, res.ptr);
    }
}

std::vector<double> parse_coeffs(std::string_view part, std::string_view label) {
    std::istringstream in{std::string(part)};
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
            throw Error(ErrorKind::invalid_input, "bad " + std::string(label) + " coefficient '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorKind::invalid_input, "empty " + std::string(label) + " coefficient list");
    return out;
}

}  // namespace

std::string TransferFunction::to_text() const {
    std::string out = "num:";
    append_coeffs(out, num_);
    out += " / den:";
    append_coeffs(out, den_);
    return out;
}

TransferFunction TransferFunction::parse(std::string_view text) {
    auto n = text.find("num:");
    auto slash = text.find('/');
    auto d = text.find("den:");
    if (n == std::string_view::npos || d == std::string_view::npos || slash == std::string_view::npos ||
        !(n < slash && slash < d))
        throw Error(ErrorKind::invalid_input, "expected 'num: ... / den: ...'");
    auto num = parse_coeffs(text.substr(n + 4, slash - n - 4), "numerator");
    auto den = parse_coeffs(text.substr(d + 4), "denominator");
    return {Polynomial(num), Polynomial(den)};
}

TransferFunction tf_feedback(const TransferFunction& G, const TransferFunction& H) {
    Polynomial num = G.num() * H.den();
    Polynomial den = G.den() * H.den() + G.num() * H.num();
    if (den.is_zero()) throw Error(ErrorKind::degenerate_system, "closed loop 1+GH vanishes identically");
    return {num, den};
}

TransferFunction tf_unity_feedback(const TransferFunction& G) { return tf_feedback(G, TransferFunction::gain(1.0)); }

}  // namespace solarpump::lti
