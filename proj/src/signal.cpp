#include "framelet/signal.hpp"

#include "framelet/errors.hpp"

namespace framelet {

Signal subdivide(const Signal& v, const LaurentMatrix& u, const Dilation& dil) {
    if (v.dim() != dil.dim || u.dim() != dil.dim)
        throw DimensionMismatch("subdivision dimension mismatch");
    return Signal(v.data.dilated(dil.m) * u, v.scale_pow + 1);
}

Signal transition(const Signal& v, const LaurentMatrix& u, const Dilation& dil) {
    if (v.dim() != dil.dim || u.dim() != dil.dim)
        throw DimensionMismatch("transition dimension mismatch");
    // (v u*)(M n) = sum_k v(k) conj(u(k - M n))^T.
    LaurentMatrix prod = v.data * u.star();
    return Signal(coset_part(prod, MIdx(static_cast<size_t>(dil.dim), 0), dil),
                  v.scale_pow + 1);
}

Signal convolve(const Signal& v, const LaurentMatrix& u) {
    return Signal(v.data * u, v.scale_pow);
}

namespace {

// sqrt(dm) in the working field, reported as a scale problem if absent.
CycNum sqrt_scale(unsigned ord, long dm) {
    try {
        return CycNum::sqrt_of_int(ord, dm);
    } catch (const UnsupportedRoot&) {
        throw IrrationalScale("sqrt(" + std::to_string(dm) + ") is not in the field, so an odd "
                              "scale gap cannot be folded");
    }
}

// Multiplies the stored data by (sqrt(dm))^gap for gap >= 0.
LaurentMatrix fold_scale(const LaurentMatrix& m, long dm, long gap) {
    LaurentMatrix out = m;
    unsigned ord = m.cyc_order();
    if (gap >= 2) {
        Integer f(dm);
        mpz_pow_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(gap / 2));
        out *= CycNum::from_rational(ord, Rational(f));
    }
    if (gap % 2 != 0) out *= sqrt_scale(ord, dm);
    return out;
}

}  // namespace

bool signals_equal(const Signal& a, const Signal& b, long dm) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.dim() != b.dim()) return false;
    if (a.scale_pow == b.scale_pow) return a.data == b.data;
    const Signal& hi = a.scale_pow > b.scale_pow ? a : b;
    const Signal& lo = a.scale_pow > b.scale_pow ? b : a;
    long gap = hi.scale_pow - lo.scale_pow;
    return fold_scale(hi.data, dm, gap) == lo.data;
}

Signal materialize_scale(const Signal& v, long dm) {
    if (v.scale_pow == 0) return v;
    if (v.scale_pow > 0) return Signal(fold_scale(v.data, dm, v.scale_pow), 0);
    // Negative powers divide instead.
    unsigned ord = v.data.cyc_order();
    long gap = -v.scale_pow;
    CycNum f = CycNum::from_int(ord, 1);
    if (gap >= 2) {
        Integer p(dm);
        mpz_pow_ui(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(gap / 2));
        f *= CycNum::from_rational(ord, Rational(p));
    }
    if (gap % 2 != 0) f *= sqrt_scale(ord, dm);
    LaurentMatrix out = v.data;
    out *= f.inverse();
    return Signal(out, 0);
}

Signal vectorize(const Signal& v, const Vectorizer& vec) {
    if (v.rows() != 1 || v.cols() != 1)
        throw DimensionMismatch("vectorize expects a scalar signal");
    if (v.dim() != vec.dim) throw DimensionMismatch("vectorize dimension mismatch");
    LaurentMatrix out(1, vec.channels, vec.dim, v.data.cyc_order());
    v.data.at(0, 0).for_each([&](const MIdx& p, const CycNum& c) {
        auto [ch, k] = vec.decompose(p);
        out.at(0, ch).set_coeff(k, c);
    });
    return Signal(out, v.scale_pow);
}

}  // namespace framelet
