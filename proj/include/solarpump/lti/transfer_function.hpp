#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "solarpump/lti/polynomial.hpp"

namespace solarpump::lti {

// Rational LTI system num(s)/den(s). The denominator is kept monic.
class TransferFunction {
public:
    TransferFunction() : num_{0.0}, den_{1.0} {}
    TransferFunction(Polynomial num, Polynomial den);

    static TransferFunction gain(double k) { return {Polynomial::constant(k), Polynomial::constant(1.0)}; }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool proper() const { return num_.degree() <= den_.degree(); }
    bool strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }

    cplx operator()(cplx s) const { return num_(s) / den_(s); }
    // num(0)/den(0); infinite for a pole at the origin
    double dc_gain() const;

    std::vector<cplx> poles() const;
    std::vector<cplx> zeros() const;

    TransferFunction scaled(double k) const { return {num_.scaled(k), den_}; }

    friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator+(const TransferFunction& a, const TransferFunction& b);

    // "num: c_n ... c_0 / den: d_m ... d_0"
    std::string to_text() const;
    static TransferFunction parse(std::string_view text);

private:
    Polynomial num_;
    Polynomial den_;
};

// G/(1+GH)
TransferFunction tf_feedback(const TransferFunction& G, const TransferFunction& H);
TransferFunction tf_unity_feedback(const TransferFunction& G);

}  // namespace solarpump::lti
