#include "framelet/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

constexpr int kMaxDim = 4;
constexpr uint64_t kBias = 1u << 15;
constexpr uint64_t kLane = 0xFFFFu;

uint64_t pack(const MIdx& k) {
    uint64_t key = 0;
    for (int j = 0; j < kMaxDim; ++j) {
        long v = j < static_cast<int>(k.size()) ? k[j] : 0;
        if (v < -32768 || v > 32767) throw Error("lattice point exceeds packing range");
        key = (key << 16) | static_cast<uint64_t>(v + static_cast<long>(kBias));
    }
    return key;
}

MIdx unpack(uint64_t key, int dim) {
    MIdx k(static_cast<size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        uint64_t lane = (key >> (16 * (kMaxDim - 1 - j))) & kLane;
        k[static_cast<size_t>(j)] = static_cast<int>(static_cast<long>(lane) -
                                                     static_cast<long>(kBias));
    }
    return k;
}

uint64_t key_add(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    for (int j = 0; j < kMaxDim; ++j) {
        uint64_t lane = ((a >> (16 * j)) & kLane) + ((b >> (16 * j)) & kLane) - kBias;
        if (lane > kLane) throw Error("lattice point exceeds packing range");
        r |= lane << (16 * j);
    }
    return r;
}

}  // namespace

LaurentPoly::LaurentPoly(int dim, unsigned cyc_order) : dim_(dim), cyc_order_(cyc_order) {
    if (dim < 1 || dim > kMaxDim)
        throw DimensionMismatch("dimension must be between 1 and 4 (got " +
                                std::to_string(dim) + ")");
    CycNum::phi_of(cyc_order);
}

LaurentPoly LaurentPoly::constant(int dim, unsigned cyc_order, const CycNum& c) {
    LaurentPoly p(dim, cyc_order);
    if (!c.is_zero()) p.terms_.emplace_back(pack(MIdx(static_cast<size_t>(dim), 0)), c);
    return p;
}

LaurentPoly LaurentPoly::one(int dim, unsigned cyc_order) {
    return constant(dim, cyc_order, CycNum::from_int(cyc_order, 1));
}

LaurentPoly LaurentPoly::monomial(int dim, unsigned cyc_order, const MIdx& k, const CycNum& c) {
    LaurentPoly p(dim, cyc_order);
    if (static_cast<int>(k.size()) != dim) throw DimensionMismatch("monomial exponent length");
    if (!c.is_zero()) p.terms_.emplace_back(pack(k), c);
    return p;
}

void LaurentPoly::require_compatible(const LaurentPoly& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("Laurent polynomial dimension mismatch");
    if (cyc_order_ != o.cyc_order_)
        throw DimensionMismatch("Laurent polynomial coefficient field mismatch");
}

CycNum LaurentPoly::coeff(const MIdx& k) const {
    if (static_cast<int>(k.size()) != dim_) throw DimensionMismatch("coefficient index length");
    uint64_t key = pack(k);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const auto& t, uint64_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == key) return it->second;
    return CycNum(cyc_order_);
}

void LaurentPoly::set_coeff(const MIdx& k, const CycNum& c) {
    if (static_cast<int>(k.size()) != dim_) throw DimensionMismatch("coefficient index length");
    if (c.order() != cyc_order_) throw DimensionMismatch("coefficient field mismatch");
    uint64_t key = pack(k);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const auto& t, uint64_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == key) {
        if (c.is_zero())
            terms_.erase(it);
        else
            it->second = c;
    } else if (!c.is_zero()) {
        terms_.insert(it, {key, c});
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    require_compatible(o);
    std::vector<std::pair<uint64_t, CycNum>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            merged.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            merged.push_back(o.terms_[j++]);
        } else {
            CycNum s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero()) merged.emplace_back(terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    require_compatible(o);
    std::vector<std::pair<uint64_t, CycNum>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            merged.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            merged.emplace_back(o.terms_[j].first, -o.terms_[j].second);
            ++j;
        } else {
            CycNum s = terms_[i].second - o.terms_[j].second;
            if (!s.is_zero()) merged.emplace_back(terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

// The convolution runs on raw integer lanes over one common denominator per
// factor, so the inner loop is pure mpz multiply-add; rational reduction
// happens once per output coefficient instead of once per term pair.  When
// the product's support box is reasonably full the accumulator is a dense
// grid addressed by one precomputed offset per term pair; otherwise a hash
// map keyed by the packed exponent takes over.
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_compatible(b);
    LaurentPoly out(a.dim_, a.cyc_order_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const size_t ph = a.terms_.front().second.phi();

    auto common_den_form = [ph](const std::vector<std::pair<uint64_t, CycNum>>& ts,
                                Integer& den) {
        den = 1;
        for (const auto& t : ts)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.den().get_mpz_t());
        std::vector<std::pair<uint64_t, std::vector<Integer>>> scaled;
        scaled.reserve(ts.size());
        for (const auto& t : ts) {
            Integer f = den / t.second.den();
            std::vector<Integer> lanes(ph);
            for (size_t i = 0; i < ph; ++i) lanes[i] = t.second.lane(i) * f;
            scaled.emplace_back(t.first, std::move(lanes));
        }
        return scaled;
    };
    Integer da, db;
    auto sa = common_den_form(a.terms_, da);
    auto sb = common_den_form(b.terms_, db);
    Integer dd = da * db;

    auto negacyclic = [ph](Integer* cell, const std::vector<Integer>& la,
                           const std::vector<Integer>& lb) {
        for (size_t i = 0; i < ph; ++i) {
            if (la[i] == 0) continue;
            for (size_t j = 0; j < ph; ++j) {
                if (lb[j] == 0) continue;
                size_t k = i + j;
                if (k < ph)
                    mpz_addmul(cell[k].get_mpz_t(), la[i].get_mpz_t(), lb[j].get_mpz_t());
                else
                    mpz_submul(cell[k - ph].get_mpz_t(), la[i].get_mpz_t(),
                               lb[j].get_mpz_t());
            }
        }
    };

    // Biased per-coordinate support bounds; lanes of a packed key add like
    // key_add, so the product box is the coordinatewise sum of the boxes.
    auto box = [](const std::vector<std::pair<uint64_t, std::vector<Integer>>>& ts,
                  uint64_t* lo, uint64_t* hi) {
        for (int u = 0; u < kMaxDim; ++u) {
            lo[u] = kLane;
            hi[u] = 0;
        }
        for (const auto& t : ts)
            for (int u = 0; u < kMaxDim; ++u) {
                uint64_t lane = (t.first >> (16 * u)) & kLane;
                lo[u] = std::min(lo[u], lane);
                hi[u] = std::max(hi[u], lane);
            }
    };
    uint64_t loa[kMaxDim], hia[kMaxDim], lob[kMaxDim], hib[kMaxDim];
    box(sa, loa, hia);
    box(sb, lob, hib);
    uint64_t lo[kMaxDim], dims[kMaxDim];
    unsigned long long vol = 1;
    constexpr unsigned long long kDenseCap = 1ull << 18;
    for (int u = 0; u < kMaxDim; ++u) {
        uint64_t l = loa[u] + lob[u] - kBias;
        uint64_t h = hia[u] + hib[u] - kBias;
        if (l > kLane || h > kLane) throw Error("lattice point exceeds packing range");
        lo[u] = l;
        dims[u] = h - l + 1;
        if (vol <= kDenseCap) vol *= dims[u];
    }

    if (vol <= kDenseCap && vol <= 4 * sa.size() * sb.size() + 256) {
        // Lane u of the packed key holds coordinate kMaxDim-1-u, so numeric
        // key order is lexicographic with lane kMaxDim-1 most significant;
        // matching strides make grid order equal sorted key order.
        long long stride[kMaxDim];
        stride[0] = 1;
        for (int u = 1; u < kMaxDim; ++u)
            stride[u] = stride[u - 1] * static_cast<long long>(dims[u - 1]);
        long long base = 0;
        for (int u = 0; u < kMaxDim; ++u)
            base += static_cast<long long>(kBias + lo[u]) * stride[u];
        auto grid_offset = [&](uint64_t key) {
            long long off = 0;
            for (int u = 0; u < kMaxDim; ++u)
                off += static_cast<long long>((key >> (16 * u)) & kLane) * stride[u];
            return off;
        };
        std::vector<long long> ia(sa.size()), ib(sb.size());
        for (size_t p = 0; p < sa.size(); ++p) ia[p] = grid_offset(sa[p].first) - base;
        for (size_t q = 0; q < sb.size(); ++q) ib[q] = grid_offset(sb[q].first);

        std::vector<Integer> flat(static_cast<size_t>(vol) * ph);
        for (size_t p = 0; p < sa.size(); ++p)
            for (size_t q = 0; q < sb.size(); ++q)
                negacyclic(&flat[static_cast<size_t>(ia[p] + ib[q]) * ph], sa[p].second,
                           sb[q].second);

        uint64_t lane[kMaxDim];
        for (int u = 0; u < kMaxDim; ++u) lane[u] = lo[u];
        for (unsigned long long cell = 0; cell < vol; ++cell) {
            Integer* lanes = &flat[static_cast<size_t>(cell) * ph];
            bool nonzero = false;
            for (size_t l = 0; l < ph && !nonzero; ++l) nonzero = lanes[l] != 0;
            if (nonzero) {
                uint64_t key = 0;
                for (int u = 0; u < kMaxDim; ++u) key |= lane[u] << (16 * u);
                std::vector<Integer> tmp(ph);
                for (size_t l = 0; l < ph; ++l) tmp[l] = std::move(lanes[l]);
                CycNum v = CycNum::from_lanes(a.cyc_order_, std::move(tmp), dd);
                if (!v.is_zero()) out.terms_.emplace_back(key, std::move(v));
            }
            for (int u = 0; u < kMaxDim; ++u) {
                if (++lane[u] < lo[u] + dims[u]) break;
                lane[u] = lo[u];
            }
        }
        return out;
    }

    std::unordered_map<uint64_t, std::vector<Integer>> acc;
    acc.reserve(2 * (sa.size() + sb.size()));
    for (const auto& ta : sa) {
        for (const auto& tb : sb) {
            auto [it, fresh] = acc.try_emplace(key_add(ta.first, tb.first));
            std::vector<Integer>& lanes = it->second;
            if (fresh) lanes.resize(ph);
            negacyclic(lanes.data(), ta.second, tb.second);
        }
    }
    out.terms_.reserve(acc.size());
    for (auto& kv : acc) {
        CycNum v = CycNum::from_lanes(a.cyc_order_, std::move(kv.second), dd);
        if (!v.is_zero()) out.terms_.emplace_back(kv.first, std::move(v));
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const CycNum& c) {
    if (c.order() != cyc_order_) throw DimensionMismatch("coefficient field mismatch");
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    return dim_ == o.dim_ && cyc_order_ == o.cyc_order_ && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::star() const {
    LaurentPoly r(dim_, cyc_order_);
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        MIdx k = unpack(it->first, dim_);
        for (auto& v : k) v = -v;
        r.terms_.emplace_back(pack(k), it->second.conj());
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
}

LaurentPoly LaurentPoly::shifted(const MIdx& k0) const {
    if (static_cast<int>(k0.size()) != dim_) throw DimensionMismatch("shift vector length");
    LaurentPoly r(dim_, cyc_order_);
    uint64_t off = pack(k0);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(key_add(t.first, off), t.second);
    return r;
}

LaurentPoly LaurentPoly::dilated(const IntMat& m) const {
    LaurentPoly r(dim_, cyc_order_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        MIdx k = mat_vec(m, unpack(t.first, dim_));
        r.terms_.emplace_back(pack(k), t.second);
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
}

LaurentPoly LaurentPoly::freq_shifted(const std::vector<Rational>& omega) const {
    if (static_cast<int>(omega.size()) != dim_) throw DimensionMismatch("frequency shift length");
    LaurentPoly r = *this;
    for (auto& t : r.terms_) {
        MIdx k = unpack(t.first, dim_);
        Rational dot(0);
        for (int j = 0; j < dim_; ++j) dot += Rational(k[static_cast<size_t>(j)]) *
                                               omega[static_cast<size_t>(j)];
        dot.canonicalize();
        t.second *= CycNum::root_of_unity(cyc_order_, -dot);
    }
    return r;
}

CycNum LaurentPoly::eval(const std::vector<Rational>& tau) const {
    if (static_cast<int>(tau.size()) != dim_) throw DimensionMismatch("evaluation point length");
    CycNum acc(cyc_order_);
    for (const auto& t : terms_) {
        MIdx k = unpack(t.first, dim_);
        Rational dot(0);
        for (int j = 0; j < dim_; ++j)
            dot += Rational(k[static_cast<size_t>(j)]) * tau[static_cast<size_t>(j)];
        dot.canonicalize();
        acc.add_mul(t.second, CycNum::root_of_unity(cyc_order_, -dot));
    }
    return acc;
}

CycNum LaurentPoly::eval_zero() const {
    CycNum acc(cyc_order_);
    for (const auto& t : terms_) acc += t.second;
    return acc;
}

std::pair<MIdx, MIdx> LaurentPoly::support_box() const {
    MIdx lo(static_cast<size_t>(dim_), 0), hi(static_cast<size_t>(dim_), 0);
    bool first = true;
    for (const auto& t : terms_) {
        MIdx k = unpack(t.first, dim_);
        if (first) {
            lo = hi = k;
            first = false;
        } else {
            for (int j = 0; j < dim_; ++j) {
                lo[static_cast<size_t>(j)] = std::min(lo[static_cast<size_t>(j)],
                                                      k[static_cast<size_t>(j)]);
                hi[static_cast<size_t>(j)] = std::max(hi[static_cast<size_t>(j)],
                                                      k[static_cast<size_t>(j)]);
            }
        }
    }
    return {lo, hi};
}

void LaurentPoly::for_each(const std::function<void(const MIdx&, const CycNum&)>& fn) const {
    for (const auto& t : terms_) fn(unpack(t.first, dim_), t.second);
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << "; ";
        first = false;
        out << "(" << t.second.to_string() << ") @ (";
        MIdx k = unpack(t.first, dim_);
        for (int j = 0; j < dim_; ++j) {
            if (j) out << ",";
            out << k[static_cast<size_t>(j)];
        }
        out << ")";
    }
    return out.str();
}

LaurentMatrix::LaurentMatrix(long rows, long cols, int dim, unsigned cyc_order)
    : rows_(rows), cols_(cols), dim_(dim), cyc_order_(cyc_order) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix shape");
    e_.assign(static_cast<size_t>(rows * cols), LaurentPoly(dim, cyc_order));
}

LaurentMatrix LaurentMatrix::identity(long n, int dim, unsigned cyc_order) {
    LaurentMatrix m(n, n, dim, cyc_order);
    for (long i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one(dim, cyc_order);
    return m;
}

LaurentMatrix LaurentMatrix::scalar(const LaurentPoly& p) {
    LaurentMatrix m(1, 1, p.dim(), p.cyc_order());
    m.at(0, 0) = p;
    return m;
}

const LaurentPoly& LaurentMatrix::at(long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionMismatch("matrix index out of range");
    return e_[static_cast<size_t>(i * cols_ + j)];
}

LaurentPoly& LaurentMatrix::at(long i, long j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionMismatch("matrix index out of range");
    return e_[static_cast<size_t>(i * cols_ + j)];
}

bool LaurentMatrix::is_zero() const {
    for (const auto& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

bool LaurentMatrix::operator==(const LaurentMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && dim_ == o.dim_ &&
           cyc_order_ == o.cyc_order_ && e_ == o.e_;
}

void LaurentMatrix::require_compatible(const LaurentMatrix& o, bool same_shape) const {
    if (dim_ != o.dim_ || cyc_order_ != o.cyc_order_)
        throw DimensionMismatch("matrix ring mismatch");
    if (same_shape && (rows_ != o.rows_ || cols_ != o.cols_))
        throw DimensionMismatch("matrix shape mismatch");
}

LaurentMatrix LaurentMatrix::operator-() const {
    LaurentMatrix r = *this;
    for (auto& p : r.e_) p = -p;
    return r;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
    require_compatible(o, true);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) {
    require_compatible(o, true);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    a.require_compatible(b, false);
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    LaurentMatrix out(a.rows_, b.cols_, a.dim_, a.cyc_order_);
    for (long i = 0; i < a.rows_; ++i)
        for (long k = 0; k < a.cols_; ++k) {
            const LaurentPoly& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (long j = 0; j < b.cols_; ++j) {
                const LaurentPoly& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

LaurentMatrix& LaurentMatrix::operator*=(const CycNum& c) {
    for (auto& p : e_) p *= c;
    return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(const LaurentPoly& p) {
    for (auto& q : e_) q *= p;
    return *this;
}

LaurentMatrix LaurentMatrix::transposed() const {
    LaurentMatrix r(cols_, rows_, dim_, cyc_order_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

LaurentMatrix LaurentMatrix::star() const {
    LaurentMatrix r(cols_, rows_, dim_, cyc_order_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).star();
    return r;
}

LaurentMatrix LaurentMatrix::shifted(const MIdx& k0) const {
    LaurentMatrix r = *this;
    for (auto& p : r.e_) p = p.shifted(k0);
    return r;
}

LaurentMatrix LaurentMatrix::dilated(const IntMat& m) const {
    LaurentMatrix r = *this;
    for (auto& p : r.e_) p = p.dilated(m);
    return r;
}

LaurentMatrix LaurentMatrix::freq_shifted(const std::vector<Rational>& omega) const {
    LaurentMatrix r = *this;
    for (auto& p : r.e_) p = p.freq_shifted(omega);
    return r;
}

LaurentMatrix LaurentMatrix::block(long i0, long j0, long r, long c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
        throw DimensionMismatch("block out of range");
    LaurentMatrix out(r, c, dim_, cyc_order_);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) out.at(i, j) = at(i0 + i, j0 + j);
    return out;
}

void LaurentMatrix::set_block(long i0, long j0, const LaurentMatrix& b) {
    require_compatible(b, false);
    if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
        throw DimensionMismatch("block out of range");
    for (long i = 0; i < b.rows_; ++i)
        for (long j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

LaurentMatrix LaurentMatrix::hcat(const LaurentMatrix& a, const LaurentMatrix& b) {
    a.require_compatible(b, false);
    if (a.rows_ != b.rows_) throw DimensionMismatch("hcat row mismatch");
    LaurentMatrix out(a.rows_, a.cols_ + b.cols_, a.dim_, a.cyc_order_);
    out.set_block(0, 0, a);
    out.set_block(0, a.cols_, b);
    return out;
}

LaurentMatrix LaurentMatrix::vcat(const LaurentMatrix& a, const LaurentMatrix& b) {
    a.require_compatible(b, false);
    if (a.cols_ != b.cols_) throw DimensionMismatch("vcat column mismatch");
    LaurentMatrix out(a.rows_ + b.rows_, a.cols_, a.dim_, a.cyc_order_);
    out.set_block(0, 0, a);
    out.set_block(a.rows_, 0, b);
    return out;
}

size_t LaurentMatrix::term_count() const {
    size_t n = 0;
    for (const auto& p : e_) n += p.term_count();
    return n;
}

std::string LaurentMatrix::to_string() const {
    std::ostringstream out;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            out << "[" << i << "," << j << "] " << at(i, j).to_string() << "\n";
    return out.str();
}

FracExpRow FracExpRow::dilated(const IntMat& m) const {
    FracExpRow r = *this;
    for (auto& t : r.tau) {
        std::vector<Rational> nt(t.size(), Rational(0));
        for (size_t i = 0; i < m.size(); ++i) {
            for (size_t j = 0; j < t.size(); ++j) nt[i] += Rational(m[i][j]) * t[j];
            nt[i].canonicalize();
        }
        t = std::move(nt);
    }
    return r;
}

FracExpRow FracExpRow::conjugated() const {
    FracExpRow r = *this;
    for (auto& t : r.tau)
        for (auto& x : t) x = -x;
    for (auto& c : r.coeff) c = c.conj();
    return r;
}

FracExpRow FracExpRow::scaled(const CycNum& c) const {
    FracExpRow r = *this;
    for (auto& x : r.coeff) x *= c;
    return r;
}

}  // namespace framelet
