#include "framelet/jet.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

Rational mi_power(const std::vector<Rational>& x, const MIdx& mu) {
    Rational r(1);
    for (size_t j = 0; j < mu.size(); ++j)
        for (int t = 0; t < mu[j]; ++t) r *= x[j];
    r.canonicalize();
    return r;
}

Integer int_power(const MIdx& k, const MIdx& mu) {
    Integer r(1);
    for (size_t j = 0; j < mu.size(); ++j) {
        Integer base(k[j]);
        for (int t = 0; t < mu[j]; ++t) r *= base;
    }
    return r;
}

std::vector<CycNum> imag_powers(unsigned cyc_order, int order, bool negative) {
    std::vector<CycNum> pw;
    pw.push_back(CycNum::from_int(cyc_order, 1));
    if (order <= 1) return pw;
    if (cyc_order % 4 != 0)
        throw UnsupportedRoot("jets of positive order need i in the field (4 | order)");
    CycNum i = CycNum::imag_unit(cyc_order);
    if (negative) i = -i;
    for (int t = 1; t < order; ++t) pw.push_back(pw.back() * i);
    return pw;
}

}  // namespace

Jet::Jet(int dim, long rows, long cols, int order, unsigned cyc_order,
         std::vector<Rational> base)
    : dim_(dim), rows_(rows), cols_(cols), order_(order), cyc_order_(cyc_order),
      base_(std::move(base)) {
    if (dim < 1 || rows < 0 || cols < 0 || order < 0)
        throw DimensionMismatch("bad jet shape");
    if (static_cast<int>(base_.size()) != dim)
        throw DimensionMismatch("jet base point length mismatch");
    for (auto& b : base_) b.canonicalize();
    mu_list_ = indices_below(dim, order);
    data_.assign(mu_list_.size(),
                 std::vector<CycNum>(static_cast<size_t>(rows * cols), CycNum(cyc_order)));
}

long Jet::mu_pos(const MIdx& mu) const {
    for (size_t i = 0; i < mu_list_.size(); ++i)
        if (mu_list_[i] == mu) return static_cast<long>(i);
    throw DimensionMismatch("derivative index outside jet order");
}

const CycNum& Jet::deriv(const MIdx& mu, long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionMismatch("jet entry out of range");
    return data_[static_cast<size_t>(mu_pos(mu))][static_cast<size_t>(i * cols_ + j)];
}

CycNum& Jet::deriv(const MIdx& mu, long i, long j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionMismatch("jet entry out of range");
    return data_[static_cast<size_t>(mu_pos(mu))][static_cast<size_t>(i * cols_ + j)];
}

CycMat Jet::level(const MIdx& mu) const {
    CycMat m(rows_, cols_, cyc_order_);
    const auto& blk = data_[static_cast<size_t>(mu_pos(mu))];
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.at(i, j) = blk[static_cast<size_t>(i * cols_ + j)];
    return m;
}

void Jet::set_level(const MIdx& mu, const CycMat& m) {
    if (m.rows() != rows_ || m.cols() != cols_) throw DimensionMismatch("level shape mismatch");
    auto& blk = data_[static_cast<size_t>(mu_pos(mu))];
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) blk[static_cast<size_t>(i * cols_ + j)] = m.at(i, j);
}

bool Jet::is_zero() const {
    for (const auto& blk : data_)
        for (const auto& x : blk)
            if (!x.is_zero()) return false;
    return true;
}

bool Jet::operator==(const Jet& o) const {
    return dim_ == o.dim_ && rows_ == o.rows_ && cols_ == o.cols_ && order_ == o.order_ &&
           cyc_order_ == o.cyc_order_ && base_ == o.base_ && data_ == o.data_;
}

void Jet::require_same_frame(const Jet& o) const {
    if (dim_ != o.dim_ || cyc_order_ != o.cyc_order_)
        throw DimensionMismatch("jet frame mismatch");
    if (base_ != o.base_) throw DimensionMismatch("jet base point mismatch");
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& blk : r.data_)
        for (auto& x : blk) x = -x;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    require_same_frame(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("jet sum shape mismatch");
    if (o.order_ < order_) *this = truncated(o.order_);
    for (size_t m = 0; m < mu_list_.size(); ++m) {
        const auto& src = o.data_[m];
        for (size_t t = 0; t < data_[m].size(); ++t) data_[m][t] += src[t];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    require_same_frame(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("jet difference shape mismatch");
    if (o.order_ < order_) *this = truncated(o.order_);
    for (size_t m = 0; m < mu_list_.size(); ++m) {
        const auto& src = o.data_[m];
        for (size_t t = 0; t < data_[m].size(); ++t) data_[m][t] -= src[t];
    }
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.require_same_frame(b);
    if (a.cols_ != b.rows_) throw DimensionMismatch("jet product shape mismatch");
    int order = std::min(a.order_, b.order_);
    Jet out(a.dim_, a.rows_, b.cols_, order, a.cyc_order_, a.base_);
    for (size_t m = 0; m < out.mu_list_.size(); ++m) {
        const MIdx& mu = out.mu_list_[m];
        auto& blk = out.data_[m];
        for (size_t nvi = 0; nvi < out.mu_list_.size(); ++nvi) {
            const MIdx& nu = out.mu_list_[nvi];
            if (!dominates(mu, nu)) continue;
            MIdx rest = sub(mu, nu);
            Integer cbin = mi_binomial(mu, nu);
            const auto& ablk = a.data_[static_cast<size_t>(a.mu_pos(nu))];
            const auto& bblk = b.data_[static_cast<size_t>(b.mu_pos(rest))];
            CycNum scaled(a.cyc_order_);
            for (long i = 0; i < a.rows_; ++i)
                for (long k = 0; k < a.cols_; ++k) {
                    const CycNum& av = ablk[static_cast<size_t>(i * a.cols_ + k)];
                    if (av.is_zero()) continue;
                    scaled = av * Rational(cbin);
                    for (long j = 0; j < b.cols_; ++j) {
                        const CycNum& bv = bblk[static_cast<size_t>(k * b.cols_ + j)];
                        if (bv.is_zero()) continue;
                        blk[static_cast<size_t>(i * b.cols_ + j)].add_mul(scaled, bv);
                    }
                }
        }
    }
    return out;
}

Jet& Jet::operator*=(const CycNum& c) {
    for (auto& blk : data_)
        for (auto& x : blk) x *= c;
    return *this;
}

Jet Jet::conjugated() const {
    Jet r = *this;
    for (auto& blk : r.data_)
        for (auto& x : blk) x = x.conj();
    return r;
}

Jet Jet::transposed() const {
    Jet r(dim_, cols_, rows_, order_, cyc_order_, base_);
    for (size_t m = 0; m < mu_list_.size(); ++m)
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j)
                r.data_[m][static_cast<size_t>(j * rows_ + i)] =
                    data_[m][static_cast<size_t>(i * cols_ + j)];
    return r;
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet r(dim_, rows_, cols_, order, cyc_order_, base_);
    for (size_t m = 0; m < r.mu_list_.size(); ++m) r.data_[m] = data_[m];
    return r;
}

Jet Jet::block(long i0, long j0, long r, long c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
        throw DimensionMismatch("jet block out of range");
    Jet out(dim_, r, c, order_, cyc_order_, base_);
    for (size_t m = 0; m < mu_list_.size(); ++m)
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j)
                out.data_[m][static_cast<size_t>(i * c + j)] =
                    data_[m][static_cast<size_t>((i0 + i) * cols_ + (j0 + j))];
    return out;
}

void Jet::set_block(long i0, long j0, const Jet& b) {
    require_same_frame(b);
    if (b.order_ < order_) throw DimensionMismatch("jet block order too small");
    if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
        throw DimensionMismatch("jet block out of range");
    for (size_t m = 0; m < mu_list_.size(); ++m)
        for (long i = 0; i < b.rows_; ++i)
            for (long j = 0; j < b.cols_; ++j)
                data_[m][static_cast<size_t>((i0 + i) * cols_ + (j0 + j))] =
                    b.data_[static_cast<size_t>(b.mu_pos(mu_list_[m]))]
                           [static_cast<size_t>(i * b.cols_ + j)];
}

Jet Jet::compose_linear(const IntMat& l) const {
    for (const auto& b : base_)
        if (b != 0) throw DimensionMismatch("compose_linear requires base point 0");
    if (static_cast<int>(l.size()) != dim_)
        throw DimensionMismatch("compose_linear needs a square matrix of the jet dimension");
    auto t = compose_linear_map(l, order_);
    Jet out(dim_, rows_, cols_, order_, cyc_order_, base_);
    for (size_t k = 0; k < mu_list_.size(); ++k) {
        for (size_t m = 0; m < mu_list_.size(); ++m) {
            const Rational& c = t[k][m];
            if (c == 0) continue;
            for (size_t e = 0; e < data_[m].size(); ++e) {
                CycNum v = data_[m][e];
                v *= c;
                out.data_[k][e] += v;
            }
        }
    }
    return out;
}

Jet Jet::reciprocal() const {
    if (rows_ != 1 || cols_ != 1) throw DimensionMismatch("reciprocal needs a 1x1 jet");
    const CycNum& f0 = data_[0][0];
    if (f0.is_zero()) throw DivisionByZero("jet reciprocal at a zero of the function");
    Jet out(dim_, 1, 1, order_, cyc_order_, base_);
    CycNum g0 = f0.inverse();
    out.data_[0][0] = g0;
    for (size_t m = 1; m < mu_list_.size(); ++m) {
        const MIdx& mu = mu_list_[m];
        CycNum acc(cyc_order_);
        for (size_t nvi = 1; nvi < mu_list_.size(); ++nvi) {
            const MIdx& nu = mu_list_[nvi];
            if (!dominates(mu, nu)) continue;
            CycNum t = data_[nvi][0] * Rational(mi_binomial(mu, nu));
            acc.add_mul(t, out.data_[static_cast<size_t>(mu_pos(sub(mu, nu)))][0]);
        }
        out.data_[m][0] = -(g0 * acc);
    }
    return out;
}

int Jet::vanishing_order() const {
    for (int t = 0; t < order_; ++t) {
        for (size_t m = 0; m < mu_list_.size(); ++m) {
            if (abs_sum(mu_list_[m]) != t) continue;
            for (const auto& x : data_[m])
                if (!x.is_zero()) return t;
        }
    }
    return order_;
}

std::string Jet::to_string() const {
    std::ostringstream out;
    for (size_t m = 0; m < mu_list_.size(); ++m) {
        out << "d^(";
        for (size_t j = 0; j < mu_list_[m].size(); ++j) {
            if (j) out << ",";
            out << mu_list_[m][j];
        }
        out << "):";
        for (const auto& x : data_[m]) out << " " << x.to_string();
        out << "\n";
    }
    return out.str();
}

Jet jet_at(const LaurentMatrix& u, const std::vector<Rational>& tau, int order) {
    Jet out(u.dim(), u.rows(), u.cols(), order, u.cyc_order(), tau);
    if (order == 0) return out;
    auto pw = imag_powers(u.cyc_order(), order, /*negative=*/true);
    const auto& mus = out.index_set();
    for (long i = 0; i < u.rows(); ++i)
        for (long j = 0; j < u.cols(); ++j) {
            u.at(i, j).for_each([&](const MIdx& k, const CycNum& c) {
                Rational dot(0);
                for (size_t t = 0; t < k.size(); ++t)
                    dot += Rational(k[t]) * out.base()[t];
                dot.canonicalize();
                CycNum f = c * CycNum::root_of_unity(u.cyc_order(), -dot);
                for (const auto& mu : mus) {
                    Integer kp = int_power(k, mu);
                    if (kp == 0) continue;
                    CycNum v = f * pw[static_cast<size_t>(abs_sum(mu))];
                    v *= Rational(kp);
                    out.deriv(mu, i, j) += v;
                }
            });
        }
    return out;
}

Jet jet_at(const LaurentPoly& u, const std::vector<Rational>& tau, int order) {
    return jet_at(LaurentMatrix::scalar(u), tau, order);
}

Jet jet_of(const FracExpRow& v, int order) {
    int d = v.dim();
    if (d == 0) throw DimensionMismatch("empty exponential row");
    Jet out(d, 1, v.size(), order, v.cyc_order,
            std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
    auto pw = imag_powers(v.cyc_order, order, /*negative=*/false);
    for (long j = 0; j < v.size(); ++j) {
        for (const auto& mu : out.index_set()) {
            Rational tp = mi_power(v.tau[static_cast<size_t>(j)], mu);
            if (tp == 0) continue;
            CycNum val = v.coeff[static_cast<size_t>(j)] * pw[static_cast<size_t>(abs_sum(mu))];
            val *= tp;
            out.deriv(mu, 0, j) += val;
        }
    }
    return out;
}

std::vector<std::vector<Rational>> compose_linear_map(const IntMat& l, int order) {
    int d = static_cast<int>(l.size());
    auto mus = indices_below(d, order);
    size_t n = mus.size();
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n, Rational(0)));
    for (size_t m = 0; m < n; ++m) {
        const MIdx& mu = mus[m];
        // Expand (L xi)^mu as a homogeneous polynomial in xi.
        std::map<MIdx, Integer> poly;
        poly[MIdx(static_cast<size_t>(d), 0)] = 1;
        for (int axis = 0; axis < d; ++axis) {
            for (int rep = 0; rep < mu[static_cast<size_t>(axis)]; ++rep) {
                std::map<MIdx, Integer> next;
                for (const auto& kv : poly) {
                    for (int j = 0; j < d; ++j) {
                        long c = l[static_cast<size_t>(axis)][static_cast<size_t>(j)];
                        if (c == 0) continue;
                        MIdx key = kv.first;
                        key[static_cast<size_t>(j)] += 1;
                        next[key] += kv.second * c;
                    }
                }
                poly = std::move(next);
            }
        }
        Integer mu_fact = mi_factorial(mu);
        for (const auto& kv : poly) {
            if (kv.second == 0) continue;
            long kpos = index_position(kv.first, order);
            if (kpos < 0) continue;
            Rational coeff(mi_factorial(kv.first) * kv.second, mu_fact);
            coeff.canonicalize();
            t[static_cast<size_t>(kpos)][m] += coeff;
        }
    }
    return t;
}

LaurentMatrix jet_to_trigpoly(const Jet& jet) {
    for (const auto& b : jet.base())
        if (b != 0) throw DimensionMismatch("jet_to_trigpoly requires base point 0");
    int d = jet.dim();
    int m = jet.order();
    if (m < 1) throw DimensionMismatch("jet_to_trigpoly needs order >= 1");
    unsigned ord = jet.cyc_order();
    long cells = 1;
    for (int j = 0; j < d; ++j) cells *= m;
    size_t blk = static_cast<size_t>(jet.rows() * jet.cols());

    // Tensor array over {0..m-1}^d, initially derivative data (zero beyond
    // the graded index set), transformed axis by axis into coefficients.
    std::vector<std::vector<CycNum>> data(static_cast<size_t>(cells),
                                          std::vector<CycNum>(blk, CycNum(ord)));
    MIdx mu(static_cast<size_t>(d), 0);
    for (long cell = 0; cell < cells; ++cell) {
        long rest = cell;
        for (int j = d - 1; j >= 0; --j) {
            mu[static_cast<size_t>(j)] = static_cast<int>(rest % m);
            rest /= m;
        }
        if (abs_sum(mu) < m) {
            for (long i = 0; i < jet.rows(); ++i)
                for (long j = 0; j < jet.cols(); ++j)
                    data[static_cast<size_t>(cell)][static_cast<size_t>(i * jet.cols() + j)] =
                        jet.deriv(mu, i, j);
        }
    }

    CycMat v(m, m, ord);
    auto pw = imag_powers(ord, m, /*negative=*/true);
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < m; ++s) {
            Integer sp(1);
            for (int rep = 0; rep < t; ++rep) sp *= s;
            CycNum val = pw[static_cast<size_t>(t)] * Rational(sp);
            v.at(t, s) = val;
        }
    CycMat vinv = v.inverse();

    long stride = 1;
    for (int axis = d - 1; axis >= 0; --axis) {
        for (long base = 0; base < cells; ++base) {
            if ((base / stride) % m != 0) continue;
            std::vector<std::vector<CycNum>> slice(static_cast<size_t>(m));
            for (int s = 0; s < m; ++s)
                slice[static_cast<size_t>(s)] = data[static_cast<size_t>(base + s * stride)];
            for (int s = 0; s < m; ++s) {
                auto& dst = data[static_cast<size_t>(base + s * stride)];
                for (auto& x : dst) x = CycNum(ord);
                for (int t = 0; t < m; ++t) {
                    const CycNum& w = vinv.at(s, t);
                    if (w.is_zero()) continue;
                    for (size_t e = 0; e < blk; ++e)
                        dst[e].add_mul(w, slice[static_cast<size_t>(t)][e]);
                }
            }
        }
        stride *= m;
    }

    LaurentMatrix out(jet.rows(), jet.cols(), d, ord);
    MIdx k(static_cast<size_t>(d), 0);
    for (long cell = 0; cell < cells; ++cell) {
        long rest = cell;
        for (int j = d - 1; j >= 0; --j) {
            k[static_cast<size_t>(j)] = static_cast<int>(rest % m);
            rest /= m;
        }
        const auto& blkvals = data[static_cast<size_t>(cell)];
        for (long i = 0; i < jet.rows(); ++i)
            for (long j = 0; j < jet.cols(); ++j) {
                const CycNum& c = blkvals[static_cast<size_t>(i * jet.cols() + j)];
                if (!c.is_zero()) out.at(i, j).set_coeff(k, c);
            }
    }
    return out;
}

}  // namespace framelet
