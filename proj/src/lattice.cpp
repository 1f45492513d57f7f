#include "framelet/lattice.hpp"

#include <algorithm>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

bool is_zero_vec(const MIdx& v) {
    for (int x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero_vec(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Integer points of m [0,1)^d: scan the bounding box of the image of the
// unit cube and keep points whose preimage lies in [0,1)^d exactly.
std::vector<MIdx> cell_points(const IntMat& m,
                              const std::vector<std::vector<Rational>>& m_inv) {
    int d = static_cast<int>(m.size());
    std::vector<long> lo(static_cast<size_t>(d), 0), hi(static_cast<size_t>(d), 0);
    long corners = 1L << d;
    for (long c = 0; c < corners; ++c) {
        MIdx corner(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) corner[static_cast<size_t>(j)] = (c >> j) & 1;
        MIdx img = mat_vec(m, corner);
        for (int j = 0; j < d; ++j) {
            lo[static_cast<size_t>(j)] = std::min<long>(lo[static_cast<size_t>(j)],
                                                        img[static_cast<size_t>(j)]);
            hi[static_cast<size_t>(j)] = std::max<long>(hi[static_cast<size_t>(j)],
                                                        img[static_cast<size_t>(j)]);
        }
    }
    std::vector<MIdx> out;
    MIdx k(static_cast<size_t>(d));
    std::vector<long> cur = lo;
    while (true) {
        for (int j = 0; j < d; ++j) k[static_cast<size_t>(j)] = static_cast<int>(cur[static_cast<size_t>(j)]);
        std::vector<Rational> pre(static_cast<size_t>(d), Rational(0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j)
                pre[static_cast<size_t>(i)] += m_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                               Rational(k[static_cast<size_t>(j)]);
            pre[static_cast<size_t>(i)].canonicalize();
        }
        bool inside = true;
        for (int i = 0; i < d && inside; ++i)
            inside = pre[static_cast<size_t>(i)] >= 0 && pre[static_cast<size_t>(i)] < 1;
        if (inside) out.push_back(k);
        int axis = d - 1;
        while (axis >= 0) {
            if (++cur[static_cast<size_t>(axis)] <= hi[static_cast<size_t>(axis)]) break;
            cur[static_cast<size_t>(axis)] = lo[static_cast<size_t>(axis)];
            --axis;
        }
        if (axis < 0) break;
    }
    // Zero first, the rest lexicographically ascending.
    std::sort(out.begin(), out.end(), [](const MIdx& a, const MIdx& b) {
        bool az = is_zero_vec(a), bz = is_zero_vec(b);
        if (az != bz) return az;
        return a < b;
    });
    return out;
}

using BigMat = std::vector<std::vector<Integer>>;

BigMat big_mul(const BigMat& a, const BigMat& b) {
    size_t n = a.size();
    BigMat out(n, std::vector<Integer>(n, Integer(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Integer big_inf_norm(const BigMat& a) {
    Integer best(0);
    for (const auto& row : a) {
        Integer s(0);
        for (const auto& x : row) s += abs(x);
        best = std::max(best, s);
    }
    return best;
}

// Exact test of rho(M^{-1}) < 1 via integer powers: M^{-1} = adj(M)/det, so
// expansiveness is rho(adj) < |det|, certified by |adj^{2^t}|_inf < |det|^{2^t}
// for some t.  Failure through t = 10 (power 1024) reports non-expansive.
bool expansive_check(const IntMat& m, long abs_det) {
    IntMat adj = adjugate(m);
    size_t d = m.size();
    BigMat a(d, std::vector<Integer>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) a[i][j] = adj[i][j];
    Integer det_pow(abs_det);
    for (int t = 0; t <= 10; ++t) {
        if (big_inf_norm(a) < det_pow) return true;
        a = big_mul(a, a);
        det_pow *= det_pow;
    }
    return false;
}

}  // namespace

Dilation make_dilation(const IntMat& m) {
    int d = static_cast<int>(m.size());
    if (d < 1 || d > 4) throw DimensionMismatch("dilation dimension must be 1..4");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != d)
            throw DimensionMismatch("dilation matrix is not square");
    Dilation dil;
    dil.m = m;
    dil.dim = d;
    Integer det = int_det(m);
    if (det == 0) throw Error("dilation matrix is singular");
    Integer ad = abs(det);
    if (ad < 2) throw Error("dilation matrix must have |det| >= 2");
    dil.abs_det = ad.get_si();
    dil.m_inv = rational_inverse(m);
    dil.gamma = cell_points(m, dil.m_inv);
    if (static_cast<long>(dil.gamma.size()) != dil.abs_det)
        throw Error("coset enumeration does not match |det|");

    // omega = M^{-T} q for q in the cell of M^T.
    IntMat mt = transpose(m);
    auto mt_inv = rational_inverse(mt);
    auto qs = cell_points(mt, mt_inv);
    for (const auto& q : qs) {
        std::vector<Rational> w(static_cast<size_t>(d), Rational(0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j)
                w[static_cast<size_t>(i)] +=
                    mt_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                    Rational(q[static_cast<size_t>(j)]);
            w[static_cast<size_t>(i)].canonicalize();
        }
        dil.omega.push_back(std::move(w));
    }
    std::sort(dil.omega.begin(), dil.omega.end(),
              [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
                  bool az = is_zero_vec(a), bz = is_zero_vec(b);
                  if (az != bz) return az;
                  return a < b;
              });
    if (static_cast<long>(dil.omega.size()) != dil.abs_det)
        throw Error("dual coset enumeration does not match |det|");

    dil.expansive = expansive_check(m, dil.abs_det);
    return dil;
}

LaurentMatrix coset_part(const LaurentMatrix& u, const MIdx& gamma, const Dilation& dil) {
    if (u.dim() != dil.dim) throw DimensionMismatch("coset dimension mismatch");
    LaurentMatrix out(u.rows(), u.cols(), u.dim(), u.cyc_order());
    int d = dil.dim;
    for (long i = 0; i < u.rows(); ++i)
        for (long j = 0; j < u.cols(); ++j) {
            u.at(i, j).for_each([&](const MIdx& k, const CycNum& c) {
                MIdx q = sub(k, gamma);
                MIdx t(static_cast<size_t>(d));
                for (int r = 0; r < d; ++r) {
                    Rational x(0);
                    for (int s = 0; s < d; ++s)
                        x += dil.m_inv[static_cast<size_t>(r)][static_cast<size_t>(s)] *
                             Rational(q[static_cast<size_t>(s)]);
                    x.canonicalize();
                    if (x.get_den() != 1) return;
                    t[static_cast<size_t>(r)] = static_cast<int>(x.get_num().get_si());
                }
                out.at(i, j).set_coeff(t, c);
            });
        }
    return out;
}

std::vector<LaurentMatrix> coset_split(const LaurentMatrix& u, const Dilation& dil) {
    std::vector<LaurentMatrix> parts;
    parts.reserve(dil.gamma.size());
    for (const auto& g : dil.gamma) parts.push_back(coset_part(u, g, dil));
    return parts;
}

LaurentMatrix coset_join(const std::vector<LaurentMatrix>& parts, const Dilation& dil) {
    if (parts.size() != dil.gamma.size())
        throw DimensionMismatch("coset_join expects one part per representative");
    LaurentMatrix out(parts[0].rows(), parts[0].cols(), dil.dim, parts[0].cyc_order());
    for (size_t g = 0; g < parts.size(); ++g) {
        const MIdx& gamma = dil.gamma[g];
        for (long i = 0; i < out.rows(); ++i)
            for (long j = 0; j < out.cols(); ++j) {
                parts[g].at(i, j).for_each([&](const MIdx& k, const CycNum& c) {
                    out.at(i, j).set_coeff(add(gamma, mat_vec(dil.m, k)), c);
                });
            }
    }
    return out;
}

Vectorizer make_vectorizer(const IntMat& n) {
    int d = static_cast<int>(n.size());
    if (d < 1 || d > 4) throw DimensionMismatch("vectorizer dimension must be 1..4");
    for (const auto& row : n)
        if (static_cast<int>(row.size()) != d)
            throw DimensionMismatch("vectorizer matrix is not square");
    Integer det = int_det(n);
    if (det == 0) throw Error("vectorizer matrix is singular");
    Vectorizer v;
    v.n = n;
    v.dim = d;
    Integer adet = abs(det);
    v.channels = adet.get_si();
    v.n_inv = rational_inverse(n);
    v.gamma = cell_points(n, v.n_inv);
    if (static_cast<long>(v.gamma.size()) != v.channels)
        throw Error("vectorizer coset enumeration does not match |det|");
    for (const auto& g : v.gamma) {
        std::vector<Rational> t(static_cast<size_t>(d), Rational(0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j)
                t[static_cast<size_t>(i)] += v.n_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                             Rational(g[static_cast<size_t>(j)]);
            t[static_cast<size_t>(i)].canonicalize();
        }
        v.tau.push_back(std::move(t));
    }
    return v;
}

FracExpRow Vectorizer::moment_row(unsigned cyc_order) const {
    FracExpRow row;
    row.cyc_order = cyc_order;
    row.tau = tau;
    row.coeff.assign(tau.size(), CycNum::from_int(cyc_order, 1));
    return row;
}

std::pair<long, MIdx> Vectorizer::decompose(const MIdx& point) const {
    if (static_cast<int>(point.size()) != dim)
        throw DimensionMismatch("vectorizer point length mismatch");
    for (size_t g = 0; g < gamma.size(); ++g) {
        MIdx q = sub(point, gamma[g]);
        MIdx k(static_cast<size_t>(dim));
        bool ok = true;
        for (int i = 0; i < dim && ok; ++i) {
            Rational x(0);
            for (int j = 0; j < dim; ++j)
                x += n_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                     Rational(q[static_cast<size_t>(j)]);
            x.canonicalize();
            if (x.get_den() != 1)
                ok = false;
            else
                k[static_cast<size_t>(i)] = static_cast<int>(x.get_num().get_si());
        }
        if (ok) return {static_cast<long>(g), k};
    }
    throw Error("point does not decompose over the vectorizer lattice");
}

}  // namespace framelet
