#pragma once

#include <optional>
#include <vector>

#include "framelet/cyclo.hpp"

namespace framelet {

// Dense matrix over Q(zeta_n).  This is the workhorse for the exact linear
// systems behind jets, moment analysis, and interpolation.
class CycMat {
  public:
    CycMat() : CycMat(0, 0, 8) {}
    CycMat(long rows, long cols, unsigned cyc_order);

    static CycMat identity(long n, unsigned cyc_order);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    unsigned cyc_order() const { return cyc_order_; }

    const CycNum& at(long i, long j) const { return e_[idx(i, j)]; }
    CycNum& at(long i, long j) { return e_[idx(i, j)]; }

    CycMat operator-() const;
    CycMat& operator+=(const CycMat& o);
    CycMat& operator-=(const CycMat& o);
    friend CycMat operator+(CycMat a, const CycMat& b) { return a += b; }
    friend CycMat operator-(CycMat a, const CycMat& b) { return a -= b; }
    friend CycMat operator*(const CycMat& a, const CycMat& b);
    CycMat& operator*=(const CycNum& c);

    CycMat transposed() const;
    CycMat conjugated() const;
    bool is_zero() const;
    bool operator==(const CycMat& o) const;
    bool operator!=(const CycMat& o) const { return !(*this == o); }

    CycNum det() const;          // Gaussian elimination, exact
    CycMat inverse() const;      // throws Error on singular input

  private:
    size_t idx(long i, long j) const;

    long rows_, cols_;
    unsigned cyc_order_;
    std::vector<CycNum> e_;
};

struct LinearSolution {
    bool solvable = false;
    // Particular solution with every free variable set to zero.
    std::vector<CycNum> particular;
    // Basis of the kernel, one vector per free variable, in column order.
    std::vector<std::vector<CycNum>> kernel;
    long rank = 0;
};

// Solves A x = b exactly.  b may have several columns stacked as a matrix;
// here it is a single column.
LinearSolution solve_linear(const CycMat& a, const std::vector<CycNum>& b);

}  // namespace framelet
