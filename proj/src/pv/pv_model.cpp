#include "solarpump/pv/pv_model.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::pv {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::invalid_input, what);
}

struct Diodes {
    double Iph, Io1, Io2, Vt1, Vt2, Rs, Rp;
    double Ns, Np;

    double junction(double V, double I) const { return V / Ns + I * Rs / Np; }

    double rhs(double V, double I) const {
        double x = junction(V, I);
        return Np * Iph - Np * Io1 * std::expm1(x / Vt1) - Np * Io2 * std::expm1(x / Vt2) - Np * x / Rp;
    }

    double f(double V, double I) const { return I - rhs(V, I); }

    double df(double V, double I) const {
        double x = junction(V, I);
        double g = Io1 / Vt1 * std::exp(x / Vt1) + Io2 / Vt2 * std::exp(x / Vt2) + 1.0 / Rp;
        return 1.0 + Rs * g;
    }
};

Diodes diodes(const PvCellParams& p, double Ns, double Np) {
    return {p.I_ph, p.I_o1, p.I_o2, thermal_voltage(p.a1, p.T_c), thermal_voltage(p.a2, p.T_c), p.R_s, p.R_p, Ns, Np};
}

bool bracketed(const Diodes& d, double V, double lo, double hi) {
    double flo = d.f(V, lo), fhi = d.f(V, hi);
    return std::isfinite(flo) && std::isfinite(fhi) && flo <= 0.0 && fhi >= 0.0;
}

// f(I) is strictly increasing and RHS(I) decreasing, so the root lies
// between 0 and RHS(0).
double solve(const Diodes& d, double V) {
    double g0 = d.rhs(V, 0.0);
    double lo = std::min(0.0, g0), hi = std::max(0.0, g0);
    if (!bracketed(d, V, lo, hi)) {
        double w = std::max(1.0, hi - lo);
        lo -= w;
        hi += w;
        if (!bracketed(d, V, lo, hi))
            throw Error(ErrorKind::solver_failure, "PV current equation has no sign change on its bracket");
    }
    if (lo == hi) return lo;

    double I = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fv = d.f(V, I);
        if (fv == 0.0) return I;
        (fv < 0.0 ? lo : hi) = I;
        double next = I - fv / d.df(V, I);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - I) <= 1e-15 * std::max(1.0, std::abs(I))) {
            I = next;
            break;
        }
        I = next;
    }
    // the relative floor only matters far outside the operating range
    if (!(std::abs(d.f(V, I)) < std::max(1e-9, 1e-13 * std::abs(I))))
        throw Error(ErrorKind::solver_failure, "PV current solve did not reach the residual tolerance");
    return I;
}

}  // namespace

void PvCellParams::validate() const {
    require(I_ph >= 0.0, "I_ph must be >= 0");
    require(I_o1 > 0.0 && I_o2 > 0.0, "saturation currents must be > 0");
    require(R_s >= 0.0, "R_s must be >= 0");
    require(R_p > 0.0, "R_p must be > 0");
    require(a1 >= 0.5 && a1 <= 3.0 && a2 >= 0.5 && a2 <= 3.0, "ideality factors must lie in [0.5, 3]");
    require(T_c > 0.0, "cell temperature must be > 0 K");
}

void PvArrayParams::validate() const {
    cell.validate();
    require(N_s >= 1 && N_p >= 1, "N_s and N_p must be >= 1");
    require(area_A > 0.0, "array area must be > 0");
    require(irradiance_G_T >= 0.0, "irradiance must be >= 0");
    require(T_ref > 0.0, "reference temperature must be > 0 K");
}

double thermal_voltage(double a, double T_c) { return a * k_boltzmann * T_c / q_electron; }

double cell_current(const PvCellParams& p, double V_c) { return solve(diodes(p, 1.0, 1.0), V_c); }

double cell_residual(const PvCellParams& p, double V_c, double I_c) { return diodes(p, 1.0, 1.0).f(V_c, I_c); }

PvCellParams effective_cell(const PvArrayParams& ap) {
    PvCellParams c = ap.cell;
    c.I_ph = ap.cell.I_ph * ap.irradiance_G_T / 1000.0;
    if (ap.io_temperature_scaling) {
        double ratio = c.T_c / ap.T_ref;
        double inv = 1.0 / ap.T_ref - 1.0 / c.T_c;
        double eg = q_electron * silicon_band_gap_eV / k_boltzmann;
        c.I_o1 *= ratio * ratio * ratio * std::exp(eg / c.a1 * inv);
        c.I_o2 *= ratio * ratio * ratio * std::exp(eg / c.a2 * inv);
    }
    return c;
}

double array_current(const PvArrayParams& ap, double V_a) {
    return solve(diodes(effective_cell(ap), ap.N_s, ap.N_p), V_a);
}

double array_residual(const PvArrayParams& ap, double V_a, double I_a) {
    return diodes(effective_cell(ap), ap.N_s, ap.N_p).f(V_a, I_a);
}

double open_circuit_voltage(const PvArrayParams& ap) {
    // f is increasing in I, so I(V) > 0 exactly when f(V, 0) < 0
    const Diodes d = diodes(effective_cell(ap), ap.N_s, ap.N_p);
    auto positive = [&d](double V) { return d.f(V, 0.0) < 0.0; };
    if (!positive(0.0)) return 0.0;
    double lo = 0.0, hi = static_cast<double>(ap.N_s);
    for (int i = 0; i < 60 && positive(hi); ++i) {
        lo = hi;
        hi *= 2.0;
    }
    if (positive(hi)) throw Error(ErrorKind::solver_failure, "open-circuit voltage not bracketed");
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> voltage_grid(double v_max, int points) {
    if (points < 2) throw Error(ErrorKind::invalid_input, "voltage grid needs at least two points");
    std::vector<double> g(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<size_t>(i)] = v_max * i / (points - 1);
    return g;
}

IvCurve iv_curve(const PvArrayParams& ap, const std::vector<double>& v_grid) {
    IvCurve c;
    for (double v : v_grid) {
        try {
            double i = array_current(ap, v);
            c.voltages.push_back(v);
            c.currents.push_back(i);
            c.powers.push_back(v * i);
        } catch (const Error& e) {
            c.skipped.push_back({v, e.what()});
        }
    }
    return c;
}

MppResult find_mpp(const PvArrayParams& ap) {
    MppResult r;
    double voc = open_circuit_voltage(ap);
    if (voc <= 0.0) return r;

    auto power = [&](double v) { return v * array_current(ap, v); };
    const int n = 400;
    std::vector<double> v(n + 1), p(n + 1);
    size_t best = 0;
    for (int i = 0; i <= n; ++i) {
        v[static_cast<size_t>(i)] = voc * i / n;
        p[static_cast<size_t>(i)] = power(v[static_cast<size_t>(i)]);
        if (p[static_cast<size_t>(i)] > p[best]) best = static_cast<size_t>(i);
    }
    int peaks = 0;
    for (size_t i = 1; i < static_cast<size_t>(n); ++i)
        if (p[i] > p[i - 1] && p[i] >= p[i + 1]) ++peaks;
    r.multimodal = peaks > 1;

    double a = v[best == 0 ? 0 : best - 1];
    double b = v[std::min<size_t>(best + 1, static_cast<size_t>(n))];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = power(x1), f2 = power(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = power(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = power(x1);
        }
    }
    r.V_mpp = 0.5 * (a + b);
    r.I_mpp = array_current(ap, r.V_mpp);
    r.P_mpp = r.V_mpp * r.I_mpp;
    if (p[best] > r.P_mpp) {
        r.V_mpp = v[best];
        r.I_mpp = p[best] / v[best];
        r.P_mpp = p[best];
    }
    return r;
}

double pv_efficiency(double V_a, double I_a, double area_A, double G_T) {
    if (!(area_A > 0.0)) throw Error(ErrorKind::invalid_input, "array area must be > 0");
    if (!(G_T > 0.0)) throw Error(ErrorKind::undefined_efficiency, "efficiency undefined at zero irradiance");
    return V_a * I_a / (area_A * G_T);
}

}  // namespace solarpump::pv
