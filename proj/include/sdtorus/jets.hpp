#ifndef SDTORUS_JETS_HPP
#define SDTORUS_JETS_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace sdt {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a complex square root is evaluated too close to the branch cut
// (negative real axis); conjugate-pair poles are only defined on a single
// sheet away from the cut.
struct BranchError : DomainError {
    explicit BranchError(const std::string& what) : DomainError(what) {}
};

// Truncated Taylor expansion of a function of (rho, eta) through total order 3.
// Coefficients are Taylor coefficients (derivatives divided by factorials),
// ordered by total degree:
//   (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) (3,0) (2,1) (1,2) (0,3)
// Arithmetic is exact through order 3; deriv_* shifts degrees down and zeroes
// the top order, so anything consuming a derivative jet is exact one order less.
struct Jet2 {
    static constexpr int N = 10;
    std::array<double, N> c{};

    static int index(int i, int j);

    double value() const { return c[0]; }
    double dr() const { return c[1]; }
    double de() const { return c[2]; }
    double drr() const { return 2.0 * c[3]; }
    double dre() const { return c[4]; }
    double dee() const { return 2.0 * c[5]; }
    double drrr() const { return 6.0 * c[6]; }
    double drre() const { return 2.0 * c[7]; }
    double dree() const { return 2.0 * c[8]; }
    double deee() const { return 6.0 * c[9]; }

    Jet2 deriv_rho() const;
    Jet2 deriv_eta() const;

    Jet2 operator-() const;
    Jet2& operator+=(const Jet2& o);
    Jet2& operator-=(const Jet2& o);
};

Jet2 jet_const(double v);
Jet2 jet_rho(double rho0);   // the coordinate function rho, expanded at rho0
Jet2 jet_eta(double eta0);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator*(const Jet2& a, double s);
Jet2 operator+(const Jet2& a, double s);
Jet2 operator+(double s, const Jet2& a);
Jet2 operator-(const Jet2& a, double s);
Jet2 operator-(double s, const Jet2& a);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator/(double s, const Jet2& b);
Jet2 operator/(const Jet2& a, double s);

Jet2 sqrt(const Jet2& a);              // requires value > 0
Jet2 pow_int(const Jet2& a, int n);    // n may be negative (requires value != 0)
Jet2 pow_half_integer(const Jet2& a, int num);  // a^(num/2)

// Complex jets as (re, im) pairs with complexified arithmetic. Only the
// conjugate-pair pole terms need these; only real parts leave the module.
struct CJet2 {
    Jet2 re, im;
};

CJet2 cjet(const Jet2& re, const Jet2& im);
CJet2 operator+(const CJet2& a, const CJet2& b);
CJet2 operator-(const CJet2& a, const CJet2& b);
CJet2 operator*(const CJet2& a, const CJet2& b);
CJet2 conj(const CJet2& a);
// Principal branch (nonnegative real part). Throws BranchError if the value
// sits on/near the negative real axis (relative bandwidth branch_tol).
CJet2 sqrt(const CJet2& a, double branch_tol = 1e-9);

// Truncated expansion in three variables through total order 2, used for the
// homogeneous extension on the cone of positive-determinant symmetric forms.
// Coefficient order: (000) (100) (010) (001) (200) (110) (101) (020) (011) (002)
struct Jet3 {
    static constexpr int N = 10;
    std::array<double, N> c{};

    static int index(int i, int j, int k);

    double value() const { return c[0]; }
    double d1() const { return c[1]; }
    double d2() const { return c[2]; }
    double d3() const { return c[3]; }
    double d11() const { return 2.0 * c[4]; }
    double d12() const { return c[5]; }
    double d13() const { return c[6]; }
    double d22() const { return 2.0 * c[7]; }
    double d23() const { return c[8]; }
    double d33() const { return 2.0 * c[9]; }
};

Jet3 jet3_const(double v);
Jet3 jet3_var(int which, double v0);  // which in {0,1,2}

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, const Jet3& a);
Jet3 sqrt(const Jet3& a);

struct CJet3 {
    Jet3 re, im;
};

CJet3 operator+(const CJet3& a, const CJet3& b);
CJet3 operator*(const CJet3& a, const CJet3& b);
CJet3 sqrt(const CJet3& a, double branch_tol = 1e-9);

}  // namespace sdt

#endif
