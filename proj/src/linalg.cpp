#include "framelet/linalg.hpp"

#include <algorithm>

#include "framelet/errors.hpp"

namespace framelet {

CycMat::CycMat(long rows, long cols, unsigned cyc_order)
    : rows_(rows), cols_(cols), cyc_order_(cyc_order) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix shape");
    e_.assign(static_cast<size_t>(rows * cols), CycNum(cyc_order));
}

size_t CycMat::idx(long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionMismatch("matrix index out of range");
    return static_cast<size_t>(i * cols_ + j);
}

CycMat CycMat::identity(long n, unsigned cyc_order) {
    CycMat m(n, n, cyc_order);
    for (long i = 0; i < n; ++i) m.at(i, i) = CycNum::from_int(cyc_order, 1);
    return m;
}

CycMat CycMat::operator-() const {
    CycMat r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

CycMat& CycMat::operator+=(const CycMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_ || cyc_order_ != o.cyc_order_)
        throw DimensionMismatch("matrix sum shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

CycMat& CycMat::operator-=(const CycMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_ || cyc_order_ != o.cyc_order_)
        throw DimensionMismatch("matrix difference shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

CycMat operator*(const CycMat& a, const CycMat& b) {
    if (a.cols_ != b.rows_ || a.cyc_order_ != b.cyc_order_)
        throw DimensionMismatch("matrix product shape mismatch");
    CycMat out(a.rows_, b.cols_, a.cyc_order_);
    for (long i = 0; i < a.rows_; ++i)
        for (long k = 0; k < a.cols_; ++k) {
            const CycNum& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (long j = 0; j < b.cols_; ++j) {
                const CycNum& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j).add_mul(aik, bkj);
            }
        }
    return out;
}

CycMat& CycMat::operator*=(const CycNum& c) {
    for (auto& x : e_) x *= c;
    return *this;
}

CycMat CycMat::transposed() const {
    CycMat r(cols_, rows_, cyc_order_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

CycMat CycMat::conjugated() const {
    CycMat r = *this;
    for (auto& x : r.e_) x = x.conj();
    return r;
}

bool CycMat::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool CycMat::operator==(const CycMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && cyc_order_ == o.cyc_order_ && e_ == o.e_;
}

CycNum CycMat::det() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    CycMat w = *this;
    CycNum result = CycNum::from_int(cyc_order_, 1);
    for (long c = 0; c < cols_; ++c) {
        long pivot = -1;
        for (long r = c; r < rows_; ++r) {
            if (!w.at(r, c).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return CycNum(cyc_order_);
        if (pivot != c) {
            for (long j = c; j < cols_; ++j) std::swap(w.at(pivot, j), w.at(c, j));
            result = -result;
        }
        const CycNum p = w.at(c, c);
        result *= p;
        CycNum pinv = p.inverse();
        for (long r = c + 1; r < rows_; ++r) {
            if (w.at(r, c).is_zero()) continue;
            CycNum f = w.at(r, c) * pinv;
            for (long j = c; j < cols_; ++j) {
                CycNum t = f * w.at(c, j);
                w.at(r, j) -= t;
            }
        }
    }
    return result;
}

CycMat CycMat::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    CycMat w = *this;
    CycMat inv = identity(rows_, cyc_order_);
    for (long c = 0; c < cols_; ++c) {
        long pivot = -1;
        for (long r = c; r < rows_; ++r) {
            if (!w.at(r, c).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw Error("matrix is singular");
        if (pivot != c) {
            for (long j = 0; j < cols_; ++j) {
                std::swap(w.at(pivot, j), w.at(c, j));
                std::swap(inv.at(pivot, j), inv.at(c, j));
            }
        }
        CycNum pinv = w.at(c, c).inverse();
        for (long j = 0; j < cols_; ++j) {
            w.at(c, j) *= pinv;
            inv.at(c, j) *= pinv;
        }
        for (long r = 0; r < rows_; ++r) {
            if (r == c || w.at(r, c).is_zero()) continue;
            CycNum f = w.at(r, c);
            for (long j = 0; j < cols_; ++j) {
                CycNum t = f * w.at(c, j);
                w.at(r, j) -= t;
                t = f * inv.at(c, j);
                inv.at(r, j) -= t;
            }
        }
    }
    return inv;
}

LinearSolution solve_linear(const CycMat& a, const std::vector<CycNum>& b) {
    if (static_cast<long>(b.size()) != a.rows())
        throw DimensionMismatch("right-hand side length mismatch");
    long rows = a.rows(), cols = a.cols();
    unsigned ord = a.cyc_order();
    CycMat w(rows, cols + 1, ord);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) w.at(i, j) = a.at(i, j);
        w.at(i, cols) = b[static_cast<size_t>(i)];
    }

    std::vector<long> pivot_col;
    long row = 0;
    for (long c = 0; c < cols && row < rows; ++c) {
        long pr = -1;
        for (long r = row; r < rows; ++r) {
            if (!w.at(r, c).is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != row)
            for (long j = c; j <= cols; ++j) std::swap(w.at(pr, j), w.at(row, j));
        CycNum pinv = w.at(row, c).inverse();
        for (long j = c; j <= cols; ++j) w.at(row, j) *= pinv;
        for (long r = 0; r < rows; ++r) {
            if (r == row || w.at(r, c).is_zero()) continue;
            CycNum f = w.at(r, c);
            for (long j = c; j <= cols; ++j) {
                CycNum t = f * w.at(row, j);
                w.at(r, j) -= t;
            }
        }
        pivot_col.push_back(c);
        ++row;
    }

    LinearSolution sol;
    sol.rank = row;
    for (long r = row; r < rows; ++r) {
        if (!w.at(r, cols).is_zero()) {
            sol.solvable = false;
            return sol;
        }
    }
    sol.solvable = true;
    sol.particular.assign(static_cast<size_t>(cols), CycNum(ord));
    for (size_t p = 0; p < pivot_col.size(); ++p)
        sol.particular[static_cast<size_t>(pivot_col[p])] = w.at(static_cast<long>(p), cols);

    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    for (long c = 0; c < cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        std::vector<CycNum> v(static_cast<size_t>(cols), CycNum(ord));
        v[static_cast<size_t>(c)] = CycNum::from_int(ord, 1);
        for (size_t p = 0; p < pivot_col.size(); ++p)
            v[static_cast<size_t>(pivot_col[p])] = -w.at(static_cast<long>(p), c);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

}  // namespace framelet
