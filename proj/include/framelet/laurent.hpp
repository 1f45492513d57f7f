#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "framelet/cyclo.hpp"
#include "framelet/multiindex.hpp"

namespace framelet {

// Sparse Laurent polynomial u(z) = sum_k u(k) z^k over Q(zeta_n) in up to
// 4 variables.  The frequency-domain reading is u_hat(xi) = sum_k u(k)
// e^{-i k.xi}.  Terms are kept sorted by lexicographically ascending k with
// no explicit zeros, so equality is structural.
class LaurentPoly {
  public:
    LaurentPoly() : LaurentPoly(1, 8) {}
    LaurentPoly(int dim, unsigned cyc_order);

    static LaurentPoly constant(int dim, unsigned cyc_order, const CycNum& c);
    static LaurentPoly one(int dim, unsigned cyc_order);
    static LaurentPoly monomial(int dim, unsigned cyc_order, const MIdx& k, const CycNum& c);

    int dim() const { return dim_; }
    unsigned cyc_order() const { return cyc_order_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    CycNum coeff(const MIdx& k) const;
    void set_coeff(const MIdx& k, const CycNum& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const CycNum& c);
    friend LaurentPoly operator*(LaurentPoly a, const CycNum& c) { return a *= c; }
    friend LaurentPoly operator*(const CycNum& c, LaurentPoly a) { return a *= c; }

    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // conj(u_hat): coefficients conjugated and k -> -k.
    LaurentPoly star() const;
    // Multiplication by z^{k0}: new(k) = old(k - k0), i.e. e^{-i k0.xi} u_hat.
    LaurentPoly shifted(const MIdx& k0) const;
    // u_hat(M^T xi): term k -> M k.
    LaurentPoly dilated(const IntMat& m) const;
    // u_hat(xi + 2*pi*omega): coefficient twist by e^{-2*pi*i k.omega}.
    LaurentPoly freq_shifted(const std::vector<Rational>& omega) const;
    // u_hat(2*pi*tau).
    CycNum eval(const std::vector<Rational>& tau) const;
    CycNum eval_zero() const;  // sum of coefficients

    // Componentwise min/max of the support; {zeros, zeros} when empty.
    std::pair<MIdx, MIdx> support_box() const;

    void for_each(const std::function<void(const MIdx&, const CycNum&)>& fn) const;

    std::string to_string() const;

  private:
    friend class LaurentMatrix;
    void require_compatible(const LaurentPoly& o) const;

    int dim_;
    unsigned cyc_order_;
    std::vector<std::pair<uint64_t, CycNum>> terms_;
};

// Dense matrix with LaurentPoly entries (row-major).
class LaurentMatrix {
  public:
    LaurentMatrix() : LaurentMatrix(0, 0, 1, 8) {}
    LaurentMatrix(long rows, long cols, int dim, unsigned cyc_order);

    static LaurentMatrix identity(long n, int dim, unsigned cyc_order);
    static LaurentMatrix scalar(const LaurentPoly& p);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    int dim() const { return dim_; }
    unsigned cyc_order() const { return cyc_order_; }

    const LaurentPoly& at(long i, long j) const;
    LaurentPoly& at(long i, long j);

    bool is_zero() const;
    bool operator==(const LaurentMatrix& o) const;
    bool operator!=(const LaurentMatrix& o) const { return !(*this == o); }

    LaurentMatrix operator-() const;
    LaurentMatrix& operator+=(const LaurentMatrix& o);
    LaurentMatrix& operator-=(const LaurentMatrix& o);
    friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
    friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
    LaurentMatrix& operator*=(const CycNum& c);
    friend LaurentMatrix operator*(LaurentMatrix a, const CycNum& c) { return a *= c; }
    friend LaurentMatrix operator*(const CycNum& c, LaurentMatrix a) { return a *= c; }
    LaurentMatrix& operator*=(const LaurentPoly& p);

    LaurentMatrix transposed() const;
    // Adjoint: transpose with conj(entry_hat); the frequency reading is
    // conj(u_hat(xi))^T.
    LaurentMatrix star() const;
    LaurentMatrix shifted(const MIdx& k0) const;
    LaurentMatrix dilated(const IntMat& m) const;
    LaurentMatrix freq_shifted(const std::vector<Rational>& omega) const;

    LaurentMatrix block(long i0, long j0, long r, long c) const;
    void set_block(long i0, long j0, const LaurentMatrix& b);
    static LaurentMatrix hcat(const LaurentMatrix& a, const LaurentMatrix& b);
    static LaurentMatrix vcat(const LaurentMatrix& a, const LaurentMatrix& b);

    size_t term_count() const;
    std::string to_string() const;

  private:
    void require_compatible(const LaurentMatrix& o, bool same_shape) const;

    long rows_, cols_;
    int dim_;
    unsigned cyc_order_;
    std::vector<LaurentPoly> e_;
};

// Row vector of scaled fractional exponentials c_j e^{i tau_j . xi}.  These
// live outside the Laurent-polynomial ring whenever some tau_j is not an
// integer point, so they are kept symbolic and enter computations via jets.
struct FracExpRow {
    unsigned cyc_order = 8;
    std::vector<std::vector<Rational>> tau;  // one point per entry
    std::vector<CycNum> coeff;               // same length as tau

    int dim() const { return tau.empty() ? 0 : static_cast<int>(tau[0].size()); }
    long size() const { return static_cast<long>(tau.size()); }

    // Entries e^{i tau_j . M^T xi} = e^{i (M tau_j) . xi}.
    FracExpRow dilated(const IntMat& m) const;
    FracExpRow conjugated() const;  // c_j -> conj(c_j), tau_j -> -tau_j
    FracExpRow scaled(const CycNum& c) const;
};

}  // namespace framelet
