#include "framelet/multiindex.hpp"

#include <stdexcept>

#include "framelet/errors.hpp"

namespace framelet {

long abs_sum(const MIdx& m) {
    long s = 0;
    for (int v : m) s += v < 0 ? -static_cast<long>(v) : v;
    return s;
}

bool dominates(const MIdx& hi, const MIdx& lo) {
    if (hi.size() != lo.size()) throw DimensionMismatch("multi-index length mismatch");
    for (size_t j = 0; j < hi.size(); ++j)
        if (hi[j] < lo[j]) return false;
    return true;
}

MIdx sub(const MIdx& a, const MIdx& b) {
    if (a.size() != b.size()) throw DimensionMismatch("multi-index length mismatch");
    MIdx r(a.size());
    for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
    return r;
}

MIdx add(const MIdx& a, const MIdx& b) {
    if (a.size() != b.size()) throw DimensionMismatch("multi-index length mismatch");
    MIdx r(a.size());
    for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
    return r;
}

namespace {

void enumerate_exact(int dim, int total, MIdx& cur, std::vector<MIdx>& out) {
    if (dim == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        enumerate_exact(dim - 1, total - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MIdx> indices_exact(int dim, int total) {
    std::vector<MIdx> out;
    if (dim <= 0 || total < 0) return out;
    MIdx cur;
    enumerate_exact(dim, total, cur, out);
    return out;
}

std::vector<MIdx> indices_below(int dim, int order) {
    std::vector<MIdx> out;
    for (int t = 0; t < order; ++t) {
        auto level = indices_exact(dim, t);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

long index_position(const MIdx& mu, int order) {
    long total = abs_sum(mu);
    for (int v : mu)
        if (v < 0) return -1;
    if (total >= order) return -1;
    long pos = 0;
    int dim = static_cast<int>(mu.size());
    for (int t = 0; t < total; ++t)
        pos += static_cast<long>(indices_exact(dim, t).size());
    auto level = indices_exact(dim, static_cast<int>(total));
    for (size_t i = 0; i < level.size(); ++i) {
        if (level[i] == mu) return pos + static_cast<long>(i);
    }
    return -1;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer mi_factorial(const MIdx& mu) {
    Integer r(1);
    for (int v : mu) r *= factorial(v);
    return r;
}

Integer mi_binomial(const MIdx& mu, const MIdx& nu) {
    if (mu.size() != nu.size()) throw DimensionMismatch("multi-index length mismatch");
    Integer r(1);
    for (size_t j = 0; j < mu.size(); ++j) {
        r *= binomial(mu[j], nu[j]);
        if (r == 0) break;
    }
    return r;
}

IntMat identity_mat(int d) {
    IntMat m(static_cast<size_t>(d), std::vector<long>(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

IntMat transpose(const IntMat& m) {
    size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
    IntMat t(c, std::vector<long>(r, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
    return t;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    if (a.empty() || a[0].size() != k) throw DimensionMismatch("integer matrix product");
    IntMat out(r, std::vector<long>(c, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t m2 = 0; m2 < k; ++m2) {
            if (a[i][m2] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][m2] * b[m2][j];
        }
    return out;
}

MIdx mat_vec(const IntMat& m, const MIdx& v) {
    if (m.empty() || m[0].size() != v.size())
        throw DimensionMismatch("integer matrix-vector product");
    MIdx out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        long s = 0;
        for (size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
        out[i] = static_cast<int>(s);
    }
    return out;
}

namespace {

Integer det_rec(const IntMat& m, std::vector<size_t>& cols, size_t row) {
    if (cols.size() == 1) return Integer(m[row][cols[0]]);
    Integer acc(0);
    for (size_t i = 0; i < cols.size(); ++i) {
        long pivot = m[row][cols[i]];
        if (pivot == 0) continue;
        std::vector<size_t> rest;
        rest.reserve(cols.size() - 1);
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != i) rest.push_back(cols[j]);
        Integer sub_det = det_rec(m, rest, row + 1);
        if (i % 2 == 0)
            acc += pivot * sub_det;
        else
            acc -= pivot * sub_det;
    }
    return acc;
}

}  // namespace

Integer int_det(const IntMat& m) {
    size_t d = m.size();
    if (d == 0 || m[0].size() != d) throw DimensionMismatch("determinant of non-square matrix");
    std::vector<size_t> cols(d);
    for (size_t j = 0; j < d; ++j) cols[j] = j;
    return det_rec(m, cols, 0);
}

IntMat adjugate(const IntMat& m) {
    size_t d = m.size();
    if (d == 0 || m[0].size() != d) throw DimensionMismatch("adjugate of non-square matrix");
    if (d == 1) return IntMat{{1}};
    IntMat adj(d, std::vector<long>(d, 0));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            IntMat minor;
            for (size_t r = 0; r < d; ++r) {
                if (r == i) continue;
                std::vector<long> row;
                for (size_t c = 0; c < d; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            Integer md = int_det(minor);
            long sign = ((i + j) % 2 == 0) ? 1 : -1;
            adj[j][i] = sign * md.get_si();
        }
    return adj;
}

std::vector<Rational> rat_mat_vec(const std::vector<std::vector<Rational>>& m,
                                  const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw DimensionMismatch("rational matrix-vector product");
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
        out[i].canonicalize();
    }
    return out;
}

std::vector<std::vector<Rational>> rational_inverse(const IntMat& m) {
    Integer d = int_det(m);
    if (d == 0) throw Error("matrix is singular");
    IntMat adj = adjugate(m);
    size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            inv[i][j] = Rational(Integer(adj[i][j]), d);
            inv[i][j].canonicalize();
        }
    return inv;
}

}  // namespace framelet
