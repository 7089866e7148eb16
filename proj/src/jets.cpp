#include "sdtorus/jets.hpp"

#include <cmath>

namespace sdt {

namespace {

// degree-ordered exponent tables
constexpr int J2I[10] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
constexpr int J2J[10] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

constexpr int J3A[10] = {0, 1, 0, 0, 2, 1, 1, 0, 0, 0};
constexpr int J3B[10] = {0, 0, 1, 0, 0, 1, 0, 2, 1, 0};
constexpr int J3C[10] = {0, 0, 0, 1, 0, 0, 1, 0, 1, 2};

int j2_lookup[4][4];
int j3_lookup[3][3][3];

const bool tables_ready = [] {
    for (auto& row : j2_lookup)
        for (auto& v : row) v = -1;
    for (int n = 0; n < 10; ++n) j2_lookup[J2I[n]][J2J[n]] = n;
    for (auto& plane : j3_lookup)
        for (auto& row : plane)
            for (auto& v : row) v = -1;
    for (int n = 0; n < 10; ++n) j3_lookup[J3A[n]][J3B[n]][J3C[n]] = n;
    return true;
}();

}  // namespace

int Jet2::index(int i, int j) { return j2_lookup[i][j]; }

Jet2 jet_const(double v) {
    Jet2 r;
    r.c[0] = v;
    return r;
}

Jet2 jet_rho(double rho0) {
    Jet2 r;
    r.c[0] = rho0;
    r.c[1] = 1.0;
    return r;
}

Jet2 jet_eta(double eta0) {
    Jet2 r;
    r.c[0] = eta0;
    r.c[2] = 1.0;
    return r;
}

Jet2 Jet2::deriv_rho() const {
    Jet2 r;
    for (int n = 0; n < N; ++n) {
        int i = J2I[n], j = J2J[n];
        if (i + 1 + j <= 3) r.c[n] = (i + 1) * c[index(i + 1, j)];
    }
    return r;
}

Jet2 Jet2::deriv_eta() const {
    Jet2 r;
    for (int n = 0; n < N; ++n) {
        int i = J2I[n], j = J2J[n];
        if (i + j + 1 <= 3) r.c[n] = (j + 1) * c[index(i, j + 1)];
    }
    return r;
}

Jet2 Jet2::operator-() const {
    Jet2 r;
    for (int n = 0; n < N; ++n) r.c[n] = -c[n];
    return r;
}

Jet2& Jet2::operator+=(const Jet2& o) {
    for (int n = 0; n < N; ++n) c[n] += o.c[n];
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
    for (int n = 0; n < N; ++n) c[n] -= o.c[n];
    return *this;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r += b;
    return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r -= b;
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    for (int n = 0; n < Jet2::N; ++n) {
        int i = J2I[n], j = J2J[n];
        double s = 0.0;
        for (int k = 0; k <= i; ++k)
            for (int l = 0; l <= j; ++l)
                s += a.c[Jet2::index(k, l)] * b.c[Jet2::index(i - k, j - l)];
        r.c[n] = s;
    }
    return r;
}

Jet2 operator*(double s, const Jet2& a) {
    Jet2 r;
    for (int n = 0; n < Jet2::N; ++n) r.c[n] = s * a.c[n];
    return r;
}

Jet2 operator*(const Jet2& a, double s) { return s * a; }

Jet2 operator+(const Jet2& a, double s) {
    Jet2 r = a;
    r.c[0] += s;
    return r;
}
Jet2 operator+(double s, const Jet2& a) { return a + s; }
Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.c[0] == 0.0) throw DomainError("jet division by zero-valued jet");
    Jet2 r;
    for (int n = 0; n < Jet2::N; ++n) {
        int i = J2I[n], j = J2J[n];
        double s = a.c[n];
        for (int k = 0; k <= i; ++k)
            for (int l = 0; l <= j; ++l) {
                if (k == i && l == j) continue;
                s -= r.c[Jet2::index(k, l)] * b.c[Jet2::index(i - k, j - l)];
            }
        r.c[n] = s / b.c[0];
    }
    return r;
}

Jet2 operator/(double s, const Jet2& b) { return jet_const(s) / b; }
Jet2 operator/(const Jet2& a, double s) { return (1.0 / s) * a; }

Jet2 sqrt(const Jet2& a) {
    if (!(a.c[0] > 0.0))
        throw DomainError("jet sqrt of nonpositive value " + std::to_string(a.c[0]));
    Jet2 r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int n = 1; n < Jet2::N; ++n) {
        int i = J2I[n], j = J2J[n];
        double s = a.c[n];
        for (int k = 0; k <= i; ++k)
            for (int l = 0; l <= j; ++l) {
                int m = Jet2::index(k, l), m2 = Jet2::index(i - k, j - l);
                if (m == 0 || m2 == 0) continue;
                s -= r.c[m] * r.c[m2];
            }
        r.c[n] = s / (2.0 * r.c[0]);
    }
    return r;
}

Jet2 pow_int(const Jet2& a, int n) {
    if (n == 0) return jet_const(1.0);
    if (n < 0) return jet_const(1.0) / pow_int(a, -n);
    Jet2 r = a;
    for (int k = 1; k < n; ++k) r = r * a;
    return r;
}

Jet2 pow_half_integer(const Jet2& a, int num) {
    if (num % 2 == 0) return pow_int(a, num / 2);
    Jet2 s = sqrt(a);
    return pow_int(s, num);
}

CJet2 cjet(const Jet2& re, const Jet2& im) { return CJet2{re, im}; }

CJet2 operator+(const CJet2& a, const CJet2& b) { return {a.re + b.re, a.im + b.im}; }
CJet2 operator-(const CJet2& a, const CJet2& b) { return {a.re - b.re, a.im - b.im}; }

CJet2 operator*(const CJet2& a, const CJet2& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CJet2 conj(const CJet2& a) { return {a.re, -a.im}; }

CJet2 sqrt(const CJet2& a, double branch_tol) {
    double x = a.re.c[0], y = a.im.c[0];
    double mod = std::hypot(x, y);
    if (mod == 0.0) throw DomainError("complex jet sqrt of zero");
    if (x < 0.0 && std::abs(y) <= branch_tol * mod)
        throw BranchError("complex sqrt on branch cut: value (" + std::to_string(x) +
                          ", " + std::to_string(y) + ")");
    // principal value
    double sr = std::sqrt((mod + x) / 2.0);
    double si = (y >= 0 ? 1.0 : -1.0) * std::sqrt((mod - x) / 2.0);
    CJet2 r{jet_const(sr), jet_const(si)};
    double den = 2.0 * (sr * sr + si * si);
    for (int n = 1; n < Jet2::N; ++n) {
        int i = J2I[n], j = J2J[n];
        double sre = a.re.c[n], sim = a.im.c[n];
        for (int k = 0; k <= i; ++k)
            for (int l = 0; l <= j; ++l) {
                int m = Jet2::index(k, l), m2 = Jet2::index(i - k, j - l);
                if (m == 0 || m2 == 0) continue;
                sre -= r.re.c[m] * r.re.c[m2] - r.im.c[m] * r.im.c[m2];
                sim -= r.re.c[m] * r.im.c[m2] + r.im.c[m] * r.re.c[m2];
            }
        // divide (sre, sim) by 2*s0
        r.re.c[n] = (sre * sr + sim * si) / den;
        r.im.c[n] = (sim * sr - sre * si) / den;
    }
    return r;
}

// ---- Jet3 ----

int Jet3::index(int i, int j, int k) { return j3_lookup[i][j][k]; }

Jet3 jet3_const(double v) {
    Jet3 r;
    r.c[0] = v;
    return r;
}

Jet3 jet3_var(int which, double v0) {
    Jet3 r;
    r.c[0] = v0;
    r.c[1 + which] = 1.0;
    return r;
}

Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int n = 0; n < Jet3::N; ++n) r.c[n] = a.c[n] + b.c[n];
    return r;
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int n = 0; n < Jet3::N; ++n) r.c[n] = a.c[n] - b.c[n];
    return r;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int n = 0; n < Jet3::N; ++n) {
        int i = J3A[n], j = J3B[n], k = J3C[n];
        double s = 0.0;
        for (int p = 0; p <= i; ++p)
            for (int q = 0; q <= j; ++q)
                for (int t = 0; t <= k; ++t)
                    s += a.c[Jet3::index(p, q, t)] * b.c[Jet3::index(i - p, j - q, k - t)];
        r.c[n] = s;
    }
    return r;
}

Jet3 operator*(double s, const Jet3& a) {
    Jet3 r;
    for (int n = 0; n < Jet3::N; ++n) r.c[n] = s * a.c[n];
    return r;
}

Jet3 sqrt(const Jet3& a) {
    if (!(a.c[0] > 0.0))
        throw DomainError("jet3 sqrt of nonpositive value " + std::to_string(a.c[0]));
    Jet3 r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int n = 1; n < Jet3::N; ++n) {
        int i = J3A[n], j = J3B[n], k = J3C[n];
        double s = a.c[n];
        for (int p = 0; p <= i; ++p)
            for (int q = 0; q <= j; ++q)
                for (int t = 0; t <= k; ++t) {
                    int m = Jet3::index(p, q, t), m2 = Jet3::index(i - p, j - q, k - t);
                    if (m == 0 || m2 == 0) continue;
                    s -= r.c[m] * r.c[m2];
                }
        r.c[n] = s / (2.0 * r.c[0]);
    }
    return r;
}

CJet3 operator+(const CJet3& a, const CJet3& b) { return {a.re + b.re, a.im + b.im}; }

CJet3 operator*(const CJet3& a, const CJet3& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CJet3 sqrt(const CJet3& a, double branch_tol) {
    double x = a.re.c[0], y = a.im.c[0];
    double mod = std::hypot(x, y);
    if (mod == 0.0) throw DomainError("complex jet3 sqrt of zero");
    if (x < 0.0 && std::abs(y) <= branch_tol * mod)
        throw BranchError("complex jet3 sqrt on branch cut");
    double sr = std::sqrt((mod + x) / 2.0);
    double si = (y >= 0 ? 1.0 : -1.0) * std::sqrt((mod - x) / 2.0);
    CJet3 r{jet3_const(sr), jet3_const(si)};
    double den = 2.0 * (sr * sr + si * si);
    for (int n = 1; n < Jet3::N; ++n) {
        int i = J3A[n], j = J3B[n], k = J3C[n];
        double sre = a.re.c[n], sim = a.im.c[n];
        for (int p = 0; p <= i; ++p)
            for (int q = 0; q <= j; ++q)
                for (int t = 0; t <= k; ++t) {
                    int m = Jet3::index(p, q, t), m2 = Jet3::index(i - p, j - q, k - t);
                    if (m == 0 || m2 == 0) continue;
                    sre -= r.re.c[m] * r.re.c[m2] - r.im.c[m] * r.im.c[m2];
                    sim -= r.re.c[m] * r.im.c[m2] + r.im.c[m] * r.re.c[m2];
                }
        r.re.c[n] = (sre * sr + sim * si) / den;
        r.im.c[n] = (sim * sr - sre * si) / den;
    }
    return r;
}

}  // namespace sdt
