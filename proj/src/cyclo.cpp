#include "framelet/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace framelet {

namespace {

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Dense polynomial over Q, index = degree.  Used only for field inversion.
using QPoly = std::vector<Rational>;

int poly_deg(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

// Euclidean division a = q*b + r with deg r < deg b.
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    int db = poly_deg(b);
    r = a;
    q.assign(a.size(), Rational(0));
    for (int i = poly_deg(r); i >= db && i >= 0; i = poly_deg(r)) {
        Rational c = r[static_cast<size_t>(i)] / b[static_cast<size_t>(db)];
        q[static_cast<size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j)
            r[static_cast<size_t>(i - db + j)] -= c * b[static_cast<size_t>(j)];
    }
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw ParseError("empty rational");
    size_t slash = s.find('/');
    std::string num = strip(s.substr(0, slash));
    std::string den = slash == std::string::npos ? "1" : strip(s.substr(slash + 1));
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!valid_int(num) || !valid_int(den))
        throw ParseError("bad rational '" + text + "'");
    Integer n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

void CycNum::check_order(unsigned order) {
    if (!is_power_of_two(order) || order > (1u << 16))
        throw UnsupportedRoot("cyclotomic order must be a power of two (got " +
                              std::to_string(order) + ")");
}

unsigned CycNum::phi_of(unsigned order) {
    check_order(order);
    return order <= 2 ? 1u : order / 2;
}

CycNum::CycNum(unsigned order) : order_(order), den_(1) {
    num_.assign(phi_of(order), Integer(0));
}

CycNum CycNum::from_rational(unsigned order, const Rational& q) {
    CycNum c(order);
    c.num_[0] = q.get_num();
    c.den_ = q.get_den();
    c.canonicalize();
    return c;
}

CycNum CycNum::from_int(unsigned order, long v) {
    CycNum c(order);
    c.num_[0] = v;
    return c;
}

CycNum CycNum::zeta_pow(unsigned order, long e) {
    CycNum c(order);
    unsigned n = c.order_;
    long m = e % static_cast<long>(n);
    if (m < 0) m += n;
    unsigned em = static_cast<unsigned>(m);
    unsigned ph = c.phi();
    if (n <= 2) {
        // z = 1 (n = 1) or z = -1 (n = 2); either way the value is rational.
        c.num_[0] = (n == 2 && em == 1) ? -1 : 1;
        return c;
    }
    if (em < ph)
        c.num_[em] = 1;
    else
        c.num_[em - ph] = -1;
    return c;
}

CycNum CycNum::root_of_unity(unsigned order, const Rational& t) {
    check_order(order);
    Rational tt = t;
    tt.canonicalize();
    Integer L = tt.get_den();
    if (!mpz_divisible_p(Integer(order).get_mpz_t(), L.get_mpz_t()))
        throw UnsupportedRoot("e^(2*pi*i*" + tt.get_str() + ") is not in Q(zeta_" +
                              std::to_string(order) + ")");
    Integer step = Integer(order) / L;
    Integer e = tt.get_num() * step;
    Integer em = e % order;
    if (em < 0) em += order;
    return zeta_pow(order, em.get_si());
}

CycNum CycNum::imag_unit(unsigned order) {
    check_order(order);
    if (order % 4 != 0)
        throw UnsupportedRoot("i requires 4 | order (got " + std::to_string(order) + ")");
    return zeta_pow(order, order / 4);
}

CycNum CycNum::sqrt2(unsigned order) {
    check_order(order);
    if (order % 8 != 0)
        throw UnsupportedRoot("sqrt(2) requires 8 | order (got " + std::to_string(order) + ")");
    return zeta_pow(order, order / 8) - zeta_pow(order, 3 * (order / 8));
}

CycNum CycNum::sqrt_of_int(unsigned order, const Integer& v) {
    if (v < 0) throw UnsupportedRoot("sqrt of negative integer");
    Integer s, rem;
    mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem == 0) return from_rational(order, Rational(s));
    if (mpz_even_p(v.get_mpz_t())) {
        Integer h = v / 2;
        mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), h.get_mpz_t());
        if (rem == 0) return sqrt2(order) * Rational(s);
    }
    throw UnsupportedRoot("sqrt(" + Integer(v).get_str() + ") is not in Q(zeta_" +
                          std::to_string(order) + ")");
}

CycNum CycNum::from_lanes(unsigned order, std::vector<Integer> lanes, Integer den) {
    CycNum c(order);
    if (lanes.size() != c.num_.size())
        throw DimensionMismatch("lane count does not match phi(" + std::to_string(order) + ")");
    c.num_ = std::move(lanes);
    c.den_ = std::move(den);
    c.canonicalize();
    return c;
}

void CycNum::canonicalize() {
    if (den_ == 0) throw DivisionByZero("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_) x = -x;
    }
    Integer g = den_;
    for (const auto& x : num_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g > 1) {
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        for (auto& x : num_)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

void CycNum::require_same_field(const CycNum& o) const {
    if (order_ != o.order_)
        throw DimensionMismatch("cyclotomic order mismatch: " + std::to_string(order_) +
                                " vs " + std::to_string(o.order_));
}

bool CycNum::is_zero() const {
    for (const auto& x : num_)
        if (x != 0) return false;
    return true;
}

bool CycNum::is_one() const {
    if (den_ != 1 || num_[0] != 1) return false;
    for (size_t j = 1; j < num_.size(); ++j)
        if (num_[j] != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t j = 1; j < num_.size(); ++j)
        if (num_[j] != 0) return false;
    return true;
}

Rational CycNum::to_rational() const {
    if (!is_rational()) throw Error("value " + to_string() + " is not rational");
    Rational q(num_[0], den_);
    q.canonicalize();
    return q;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
    require_same_field(o);
    if (den_ == o.den_) {
        for (size_t j = 0; j < num_.size(); ++j) num_[j] += o.num_[j];
    } else {
        Integer g;
        mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
        Integer sa = o.den_ / g, sb = den_ / g;
        for (size_t j = 0; j < num_.size(); ++j)
            num_[j] = num_[j] * sa + o.num_[j] * sb;
        den_ *= sa;
    }
    canonicalize();
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    require_same_field(o);
    if (den_ == o.den_) {
        for (size_t j = 0; j < num_.size(); ++j) num_[j] -= o.num_[j];
    } else {
        Integer g;
        mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
        Integer sa = o.den_ / g, sb = den_ / g;
        for (size_t j = 0; j < num_.size(); ++j)
            num_[j] = num_[j] * sa - o.num_[j] * sb;
        den_ *= sa;
    }
    canonicalize();
    return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
    require_same_field(o);
    size_t ph = num_.size();
    std::vector<Integer> res(ph, Integer(0));
    for (size_t i = 0; i < ph; ++i) {
        if (num_[i] == 0) continue;
        for (size_t j = 0; j < ph; ++j) {
            if (o.num_[j] == 0) continue;
            size_t k = i + j;
            if (k < ph)
                mpz_addmul(res[k].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
            else
                mpz_submul(res[k - ph].get_mpz_t(), num_[i].get_mpz_t(),
                           o.num_[j].get_mpz_t());
        }
    }
    num_ = std::move(res);
    den_ *= o.den_;
    canonicalize();
    return *this;
}

void CycNum::add_mul(const CycNum& a, const CycNum& b) {
    require_same_field(a);
    a.require_same_field(b);
    size_t ph = num_.size();
    std::vector<Integer> prod(ph, Integer(0));
    for (size_t i = 0; i < ph; ++i) {
        if (a.num_[i] == 0) continue;
        for (size_t j = 0; j < ph; ++j) {
            if (b.num_[j] == 0) continue;
            size_t k = i + j;
            if (k < ph)
                mpz_addmul(prod[k].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
            else
                mpz_submul(prod[k - ph].get_mpz_t(), a.num_[i].get_mpz_t(),
                           b.num_[j].get_mpz_t());
        }
    }
    Integer pden = a.den_ * b.den_;
    if (den_ == pden) {
        for (size_t j = 0; j < ph; ++j) num_[j] += prod[j];
    } else {
        Integer g;
        mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), pden.get_mpz_t());
        Integer sa = pden / g, sb = den_ / g;
        for (size_t j = 0; j < ph; ++j)
            num_[j] = num_[j] * sa + prod[j] * sb;
        den_ *= sa;
    }
    canonicalize();
}

CycNum& CycNum::operator*=(const Rational& q) {
    for (auto& x : num_) x *= q.get_num();
    den_ *= q.get_den();
    canonicalize();
    return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

CycNum CycNum::conj() const {
    CycNum r(order_);
    size_t ph = num_.size();
    r.den_ = den_;
    r.num_[0] = num_[0];
    for (size_t j = 1; j < ph; ++j)
        r.num_[ph - j] -= num_[j];
    r.canonicalize();
    return r;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    size_t ph = num_.size();
    if (ph == 1) {
        Rational q(num_[0], den_);
        q.canonicalize();
        return from_rational(order_, Rational(1) / q);
    }
    if (is_rational()) {
        Rational q(num_[0], den_);
        q.canonicalize();
        return from_rational(order_, Rational(1) / q);
    }
    // Extended Euclid in Q[x] against the minimal polynomial x^phi + 1,
    // which is irreducible for power-of-two orders, so the gcd is a nonzero
    // constant and the Bezout coefficient of *this is the inverse.
    QPoly r0(ph + 1, Rational(0)), r1(ph + 1, Rational(0));
    r0[0] = 1;
    r0[ph] = 1;
    for (size_t j = 0; j < ph; ++j) r1[j] = Rational(num_[j], den_);
    QPoly t0(ph + 1, Rational(0)), t1(ph + 1, Rational(0));
    t1[0] = 1;
    QPoly q, rem, t2;
    while (poly_deg(r1) > 0) {
        poly_divmod(r0, r1, q, rem);
        t2.assign(ph + 1, Rational(0));
        // t2 = t0 - q*t1, truncated below degree phi+1 (degrees stay < phi).
        for (size_t i = 0; i <= ph; ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; i + j <= ph; ++j)
                t2[i + j] -= q[i] * t1[j];
        }
        for (size_t i = 0; i <= ph; ++i) t2[i] += t0[i];
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if (poly_deg(r1) != 0)
        throw DivisionByZero("inverse of zero");
    CycNum out(order_);
    Integer lcm(1);
    QPoly inv(ph, Rational(0));
    for (size_t j = 0; j < ph; ++j) {
        inv[j] = t1[j] / r1[0];
        inv[j].canonicalize();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), inv[j].get_den().get_mpz_t());
    }
    out.den_ = lcm;
    for (size_t j = 0; j < ph; ++j)
        out.num_[j] = inv[j].get_num() * (lcm / inv[j].get_den());
    out.canonicalize();
    return out;
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum base = *this;
    CycNum acc = from_int(order_, 1);
    unsigned long u = static_cast<unsigned long>(e);
    while (u > 0) {
        if (u & 1) acc *= base;
        u >>= 1;
        if (u) base *= base;
    }
    return acc;
}

bool CycNum::operator==(const CycNum& o) const {
    if (order_ != o.order_) return false;
    return den_ == o.den_ && num_ == o.num_;
}

std::string CycNum::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (size_t j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        Rational c(num_[j], den_);
        c.canonicalize();
        if (!first) out << " + ";
        out << c.get_str();
        if (j > 0) out << "*z^" << j;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

CycNum CycNum::parse(unsigned order, const std::string& text) {
    CycNum acc(order);
    std::string s = text;
    size_t pos = 0;
    bool any = false;
    while (pos <= s.size()) {
        size_t plus = s.find(" + ", pos);
        std::string term =
            strip(plus == std::string::npos ? s.substr(pos) : s.substr(pos, plus - pos));
        if (term.empty()) throw ParseError("empty term in '" + text + "'");
        size_t zp = term.find("*z^");
        if (zp == std::string::npos) {
            acc += from_rational(order, parse_rational(term));
        } else {
            Rational c = parse_rational(term.substr(0, zp));
            std::string es = strip(term.substr(zp + 3));
            if (es.empty()) throw ParseError("missing exponent in '" + term + "'");
            size_t i = (es[0] == '+' || es[0] == '-') ? 1 : 0;
            if (i == es.size()) throw ParseError("bad exponent in '" + term + "'");
            for (; i < es.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(es[i])))
                    throw ParseError("bad exponent in '" + term + "'");
            long e = std::stol(es);
            acc += zeta_pow(order, e) * c;
        }
        any = true;
        if (plus == std::string::npos) break;
        pos = plus + 3;
    }
    if (!any) throw ParseError("empty value");
    return acc;
}

}  // namespace framelet
