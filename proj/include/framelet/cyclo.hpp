#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "framelet/errors.hpp"
#include "framelet/rational.hpp"

namespace framelet {

// Element of the cyclotomic field Q(zeta_n) for a power-of-two order n,
// written on the power basis 1, z, ..., z^{phi-1} with z = e^{2*pi*i/n} and
// phi = n/2 (phi = 1 for n in {1, 2}).  Reduction uses z^phi = -1.
//
// Storage is a shared denominator with integer numerator lanes.  The
// canonical invariant (den > 0, gcd of all numerators and den equal to 1)
// holds after every public operation, so equality is componentwise.
class CycNum {
  public:
    CycNum() : CycNum(kDefaultOrder) {}
    explicit CycNum(unsigned order);

    static unsigned phi_of(unsigned order);

    static CycNum from_rational(unsigned order, const Rational& q);
    static CycNum from_int(unsigned order, long v);
    // zeta_n^e, any integer exponent.
    static CycNum zeta_pow(unsigned order, long e);
    // e^{2*pi*i*t} for rational t; requires the reduced denominator of t to
    // divide the order, else throws UnsupportedRoot.
    static CycNum root_of_unity(unsigned order, const Rational& t);
    static CycNum imag_unit(unsigned order);    // needs 4 | order
    static CycNum sqrt2(unsigned order);        // needs 8 | order
    // sqrt of a nonnegative integer when it lies in the field: perfect
    // squares always, and 2*(perfect square) when 8 | order.
    static CycNum sqrt_of_int(unsigned order, const Integer& v);
    // Raw power-basis value sum lanes[j] z^j / den; lanes.size() must be
    // phi_of(order).  Canonicalizes, so any den != 0 is accepted.
    static CycNum from_lanes(unsigned order, std::vector<Integer> lanes, Integer den);

    unsigned order() const { return order_; }
    unsigned phi() const { return static_cast<unsigned>(num_.size()); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Throws if lanes beyond the first are nonzero.
    Rational to_rational() const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);
    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

    CycNum& operator*=(const Rational& q);
    friend CycNum operator*(CycNum a, const Rational& q) { return a *= q; }
    friend CycNum operator*(const Rational& q, CycNum a) { return a *= q; }

    // Accumulates a*b into *this without extra canonicalization passes.
    void add_mul(const CycNum& a, const CycNum& b);

    CycNum conj() const;      // complex conjugate z^j -> z^{-j}
    CycNum inverse() const;   // throws DivisionByZero on zero
    CycNum pow(long e) const;

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    // Canonical text: "+"-joined terms, each "rational" (exponent 0) or
    // "rational*z^e" with 1 <= e < phi, ascending exponents; "0" when zero.
    std::string to_string() const;
    static CycNum parse(unsigned order, const std::string& text);

    // Raw lane access (numerator of the z^j coefficient over den()).
    const Integer& lane(unsigned j) const { return num_[j]; }
    const Integer& den() const { return den_; }
    Rational coeff(unsigned j) const { return Rational(num_[j], den_); }

  private:
    static constexpr unsigned kDefaultOrder = 8;
    static void check_order(unsigned order);
    void canonicalize();
    void require_same_field(const CycNum& o) const;

    unsigned order_;
    std::vector<Integer> num_;
    Integer den_;
};

}  // namespace framelet
