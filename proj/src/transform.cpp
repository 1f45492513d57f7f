#include "framelet/transform.hpp"

#include <map>
#include <set>
#include <sstream>

#include "framelet/analysis.hpp"
#include "framelet/errors.hpp"

namespace framelet {

namespace {

// Adds two signals by folding (sqrt(dm))^gap into the higher-tag side so the
// sum carries the lower tag.
Signal signal_add(const Signal& a, const Signal& b, long dm) {
    if (a.scale_pow == b.scale_pow) return Signal(a.data + b.data, a.scale_pow);
    const Signal& lo = (a.scale_pow < b.scale_pow) ? a : b;
    const Signal& hi = (a.scale_pow < b.scale_pow) ? b : a;
    long gap = hi.scale_pow - lo.scale_pow;
    unsigned ord = lo.data.cyc_order();
    CycNum f = CycNum::from_int(ord, 1);
    if (gap >= 2) {
        Integer p(dm);
        mpz_pow_ui(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(gap / 2));
        f = CycNum::from_rational(ord, Rational(p));
    }
    if (gap % 2 != 0) {
        try {
            f *= CycNum::sqrt_of_int(ord, dm);
        } catch (const UnsupportedRoot&) {
            throw IrrationalScale("odd scale gap with sqrt(" + std::to_string(dm) +
                                  ") outside the field");
        }
    }
    LaurentMatrix folded = hi.data;
    folded *= f;
    return Signal(lo.data + folded, lo.scale_pow);
}

std::string point_to_string(const MIdx& p) {
    std::ostringstream os;
    os << "(";
    for (size_t t = 0; t < p.size(); ++t) {
        if (t) os << ", ";
        os << p[t];
    }
    os << ")";
    return os.str();
}

}  // namespace

DmftCoeffs dmft_forward(const FrameletSystem& sys, const Signal& v0, int levels) {
    sys.validate_shapes();
    if (!sys.b) throw MissingFilter("the forward transform needs the highpass filter b");
    if (levels < 0) throw Error("level count must be nonnegative");
    if (v0.cols() != sys.multiplicity() || v0.rows() != 1)
        throw DimensionMismatch("input signal must be a row over the filter channels");
    DmftCoeffs out;
    Signal v = v0;
    for (int j = 0; j < levels; ++j) {
        Signal w = transition(v, *sys.b, sys.dil);
        v = transition(v, sys.a, sys.dil);
        out.detail.push_back(std::move(w));
    }
    out.approx = std::move(v);
    return out;
}

Signal dmft_inverse(const FrameletSystem& sys, const DmftCoeffs& coeffs) {
    sys.validate_shapes();
    if (!sys.b_tilde)
        throw MissingFilter("the inverse transform needs the highpass filter b_tilde");
    long dm = sys.dil.abs_det;
    LaurentMatrix big = sys.Theta();
    Signal v = convolve(coeffs.approx, big);
    for (size_t j = coeffs.detail.size(); j-- > 0;) {
        Signal low = subdivide(v, sys.a_tilde, sys.dil);
        Signal high = subdivide(coeffs.detail[j], *sys.b_tilde, sys.dil);
        v = signal_add(low, high, dm);
    }
    StrongInvertibility si = strong_invertibility(big);
    if (!si.verdict) throw NotStronglyInvertible("Theta is not strongly invertible");
    return convolve(v, *si.inverse);
}

BalancingProbe probe_balancing(const FrameletSystem& sys, const MIdx& mu, long radius) {
    sys.validate_shapes();
    if (!sys.b) throw MissingFilter("the balancing probe needs the highpass filter b");
    const Vectorizer& vec = sys.vec;
    int d = vec.dim;
    unsigned ord = sys.cyc_order;
    if (static_cast<int>(mu.size()) != d)
        throw DimensionMismatch("probe exponent dimension mismatch");
    for (int e : mu)
        if (e < 0) throw DimensionMismatch("probe exponent must be nonnegative");
    if (radius < 1) throw WindowTooSmall("probe radius must be positive");

    // Monomial samples p^mu on the window, 0^0 = 1.
    auto mono = [&](const MIdx& p) {
        Integer v(1);
        for (int t = 0; t < d; ++t) {
            Integer base(p[static_cast<size_t>(t)]);
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(),
                       static_cast<unsigned long>(mu[static_cast<size_t>(t)]));
            v *= pw;
        }
        return CycNum::from_rational(ord, Rational(v));
    };

    // Walk the window once: fiber completeness and channel values together.
    std::map<MIdx, long> fiber_count;
    std::map<MIdx, std::vector<CycNum>> fiber_vals;
    MIdx p(static_cast<size_t>(d), -radius);
    bool done = false;
    while (!done) {
        auto [ch, k] = vec.decompose(p);
        auto& vals = fiber_vals[k];
        if (vals.empty()) vals.assign(static_cast<size_t>(vec.channels), CycNum(ord));
        vals[static_cast<size_t>(ch)] = mono(p);
        fiber_count[k] += 1;
        int t = 0;
        for (; t < d; ++t) {
            if (p[static_cast<size_t>(t)] < radius) {
                ++p[static_cast<size_t>(t)];
                break;
            }
            p[static_cast<size_t>(t)] = -radius;
        }
        done = (t == d);
    }

    std::set<MIdx> complete;
    LaurentMatrix vecdata(1, vec.channels, d, ord);
    for (const auto& [k, cnt] : fiber_count) {
        if (cnt != vec.channels) continue;
        complete.insert(k);
        const auto& vals = fiber_vals[k];
        for (long ch = 0; ch < vec.channels; ++ch)
            vecdata.at(0, ch).set_coeff(k, vals[static_cast<size_t>(ch)]);
    }

    Signal w = transition(Signal(vecdata), *sys.b, sys.dil);

    BalancingProbe probe;
    // Union of the highpass entry supports.
    std::set<MIdx> supp;
    for (long i = 0; i < sys.b->rows(); ++i)
        for (long j = 0; j < sys.b->cols(); ++j)
            sys.b->at(i, j).for_each([&](const MIdx& s, const CycNum&) { supp.insert(s); });
    if (supp.empty()) {
        probe.zero = true;
        return probe;
    }
    if (complete.empty()) throw WindowTooSmall("no complete vectorizer fiber in the window");

    MIdx kmin = *complete.begin(), kmax = *complete.begin();
    for (const MIdx& k : complete)
        for (int t = 0; t < d; ++t) {
            kmin[static_cast<size_t>(t)] = std::min(kmin[static_cast<size_t>(t)], k[static_cast<size_t>(t)]);
            kmax[static_cast<size_t>(t)] = std::max(kmax[static_cast<size_t>(t)], k[static_cast<size_t>(t)]);
        }
    MIdx smin = *supp.begin(), smax = *supp.begin();
    for (const MIdx& s : supp)
        for (int t = 0; t < d; ++t) {
            smin[static_cast<size_t>(t)] = std::min(smin[static_cast<size_t>(t)], s[static_cast<size_t>(t)]);
            smax[static_cast<size_t>(t)] = std::max(smax[static_cast<size_t>(t)], s[static_cast<size_t>(t)]);
        }

    // Candidate box for n: M n must land in [kmin - smax, kmax - smin], so n
    // ranges over the integer bounding box of the preimage corners.
    auto minv = rational_inverse(sys.dil.m);
    std::vector<Rational> blo(static_cast<size_t>(d)), bhi(static_cast<size_t>(d));
    bool first = true;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<Rational> corner(static_cast<size_t>(d));
        for (int t = 0; t < d; ++t) {
            bool high = (mask >> t) & 1u;
            corner[static_cast<size_t>(t)] =
                high ? Rational(kmax[static_cast<size_t>(t)] - smin[static_cast<size_t>(t)])
                     : Rational(kmin[static_cast<size_t>(t)] - smax[static_cast<size_t>(t)]);
        }
        auto img = rat_mat_vec(minv, corner);
        for (int t = 0; t < d; ++t) {
            if (first || img[static_cast<size_t>(t)] < blo[static_cast<size_t>(t)])
                blo[static_cast<size_t>(t)] = img[static_cast<size_t>(t)];
            if (first || img[static_cast<size_t>(t)] > bhi[static_cast<size_t>(t)])
                bhi[static_cast<size_t>(t)] = img[static_cast<size_t>(t)];
        }
        first = false;
    }
    MIdx nlo(static_cast<size_t>(d)), nhi(static_cast<size_t>(d));
    for (int t = 0; t < d; ++t) {
        Integer c, f;
        mpz_cdiv_q(c.get_mpz_t(), blo[static_cast<size_t>(t)].get_num().get_mpz_t(),
                   blo[static_cast<size_t>(t)].get_den().get_mpz_t());
        mpz_fdiv_q(f.get_mpz_t(), bhi[static_cast<size_t>(t)].get_num().get_mpz_t(),
                   bhi[static_cast<size_t>(t)].get_den().get_mpz_t());
        nlo[static_cast<size_t>(t)] = static_cast<int>(c.get_si());
        nhi[static_cast<size_t>(t)] = static_cast<int>(f.get_si());
    }

    std::vector<MIdx> interior;
    MIdx n = nlo;
    bool box_empty = false;
    for (int t = 0; t < d; ++t)
        if (nlo[static_cast<size_t>(t)] > nhi[static_cast<size_t>(t)]) box_empty = true;
    while (!box_empty) {
        MIdx mn = mat_vec(sys.dil.m, n);
        bool ok = true;
        for (const MIdx& s : supp) {
            if (complete.find(add(mn, s)) == complete.end()) {
                ok = false;
                break;
            }
        }
        if (ok) interior.push_back(n);
        int t = 0;
        for (; t < d; ++t) {
            if (n[static_cast<size_t>(t)] < nhi[static_cast<size_t>(t)]) {
                ++n[static_cast<size_t>(t)];
                break;
            }
            n[static_cast<size_t>(t)] = nlo[static_cast<size_t>(t)];
        }
        if (t == d) break;
    }
    if (interior.empty())
        throw WindowTooSmall("no interior point survives the highpass support; enlarge the radius");

    probe.interior = static_cast<long>(interior.size());
    probe.zero = true;
    for (const MIdx& nn : interior) {
        for (long i = 0; i < w.cols(); ++i) {
            CycNum c = w.data.at(0, i).coeff(nn);
            if (!c.is_zero()) {
                probe.zero = false;
                std::ostringstream os;
                os << "channel " << (i + 1) << " at " << point_to_string(nn) << ": "
                   << c.to_string();
                probe.witness = os.str();
                return probe;
            }
        }
    }
    return probe;
}

}  // namespace framelet
