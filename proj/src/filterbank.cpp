#include "framelet/filterbank.hpp"

#include <sstream>

#include "framelet/errors.hpp"

namespace framelet {

LaurentMatrix FrameletSystem::theta_or_identity() const {
    if (theta) return *theta;
    return LaurentMatrix::identity(multiplicity(), dim(), cyc_order);
}

LaurentMatrix FrameletSystem::theta_tilde_or_identity() const {
    if (theta_tilde) return *theta_tilde;
    return LaurentMatrix::identity(multiplicity(), dim(), cyc_order);
}

LaurentMatrix FrameletSystem::Theta() const {
    if (big_theta) return *big_theta;
    if (theta || theta_tilde) return theta_or_identity().star() * theta_tilde_or_identity();
    return LaurentMatrix::identity(multiplicity(), dim(), cyc_order);
}

void FrameletSystem::validate_shapes() const {
    long r = multiplicity();
    auto check = [&](const LaurentMatrix& m, long rows, long cols, const char* name) {
        if (m.rows() != rows || m.cols() != cols)
            throw DimensionMismatch(std::string(name) + " has wrong shape");
        if (m.dim() != dim() || m.cyc_order() != cyc_order)
            throw DimensionMismatch(std::string(name) + " lives in the wrong ring");
    };
    check(a, r, r, "a");
    check(a_tilde, r, r, "a_tilde");
    if (theta) check(*theta, r, r, "theta");
    if (theta_tilde) check(*theta_tilde, r, r, "theta_tilde");
    if (big_theta) check(*big_theta, r, r, "Theta");
    if (b && b_tilde) {
        if (b->cols() != r || b_tilde->cols() != r)
            throw DimensionMismatch("highpass filters must have r columns");
        if (b->rows() != b_tilde->rows())
            throw DimensionMismatch("highpass pair row counts differ");
    } else if (b || b_tilde) {
        throw DimensionMismatch("highpass filters must come as a pair");
    }
    if (vec.channels != r)
        throw DimensionMismatch("vectorizer channel count must equal the multiplicity");
    if (vec.dim != dim()) throw DimensionMismatch("vectorizer dimension mismatch");
}

LaurentMatrix polyphase_row(const LaurentMatrix& u, const Dilation& dil) {
    auto parts = coset_split(u, dil);
    LaurentMatrix out = parts[0];
    for (size_t g = 1; g < parts.size(); ++g) out = LaurentMatrix::hcat(out, parts[g]);
    return out;
}

LaurentMatrix modulation_mixer(long r, const Dilation& dil, unsigned cyc_order) {
    long big = r * dil.abs_det;
    unsigned ord = cyc_order;
    LaurentMatrix f(big, big, dil.dim, ord);
    for (long l = 0; l < dil.abs_det; ++l) {
        const MIdx& gamma = dil.gamma[static_cast<size_t>(l)];
        for (long k = 0; k < dil.abs_det; ++k) {
            Rational dot(0);
            for (int j = 0; j < dil.dim; ++j)
                dot += Rational(gamma[static_cast<size_t>(j)]) *
                       dil.omega[static_cast<size_t>(k)][static_cast<size_t>(j)];
            dot.canonicalize();
            CycNum phase = CycNum::root_of_unity(ord, -dot);
            LaurentPoly entry =
                LaurentPoly::monomial(dil.dim, ord, gamma, phase);
            for (long t = 0; t < r; ++t) f.at(l * r + t, k * r + t) = entry;
        }
    }
    return f;
}

LaurentMatrix coset_difference_matrix(const LaurentMatrix& u,
                                      const std::vector<Rational>& omega,
                                      const Dilation& dil) {
    long rr = u.rows(), cc = u.cols();
    long big_r = rr * dil.abs_det, big_c = cc * dil.abs_det;
    LaurentMatrix e(big_r, big_c, dil.dim, u.cyc_order());
    for (long l = 0; l < dil.abs_det; ++l) {
        Rational dot(0);
        for (int j = 0; j < dil.dim; ++j)
            dot += Rational(dil.gamma[static_cast<size_t>(l)][static_cast<size_t>(j)]) *
                   omega[static_cast<size_t>(j)];
        dot.canonicalize();
        CycNum phase = CycNum::root_of_unity(u.cyc_order(), dot);
        for (long k = 0; k < dil.abs_det; ++k) {
            MIdx diff = sub(dil.gamma[static_cast<size_t>(k)], dil.gamma[static_cast<size_t>(l)]);
            LaurentMatrix part = coset_part(u, diff, dil);
            part *= phase;
            e.set_block(l * rr, k * cc, part);
        }
    }
    return e;
}

LaurentMatrix polyphase_full(const LaurentMatrix& u, const Dilation& dil) {
    return polyphase_row(u, dil).dilated(dil.m) *
           modulation_mixer(u.cols(), dil, u.cyc_order());
}

LaurentMatrix modulation_matrix(const LaurentMatrix& u,
                                const std::vector<Rational>& omega,
                                const Dilation& dil) {
    long rr = u.rows(), cc = u.cols();
    long L = dil.abs_det;
    LaurentMatrix d(rr * L, cc * L, dil.dim, u.cyc_order());
    for (long p = 0; p < L; ++p) {
        std::vector<Rational> shift(static_cast<size_t>(dil.dim));
        for (int j = 0; j < dil.dim; ++j) {
            shift[static_cast<size_t>(j)] =
                dil.omega[static_cast<size_t>(p)][static_cast<size_t>(j)] +
                omega[static_cast<size_t>(j)];
            shift[static_cast<size_t>(j)].canonicalize();
        }
        // Column q with omega_p + omega - omega_q integral.
        long q = -1;
        for (long cand = 0; cand < L; ++cand) {
            bool integral = true;
            for (int j = 0; j < dil.dim && integral; ++j) {
                Rational diff = shift[static_cast<size_t>(j)] -
                                dil.omega[static_cast<size_t>(cand)][static_cast<size_t>(j)];
                diff.canonicalize();
                integral = diff.get_den() == 1;
            }
            if (integral) {
                q = cand;
                break;
            }
        }
        if (q < 0) throw Error("modulation shift does not realign with the dual cosets");
        d.set_block(p * rr, q * cc, u.freq_shifted(shift));
    }
    return d;
}

LaurentMatrix mixed_moment_block(const LaurentMatrix& a, const LaurentMatrix& a_tilde,
                                 const LaurentMatrix& big_theta, const Dilation& dil) {
    std::vector<Rational> zero(static_cast<size_t>(dil.dim), Rational(0));
    LaurentMatrix e = coset_difference_matrix(big_theta, zero, dil);
    CycNum inv_d = CycNum::from_rational(big_theta.cyc_order(), Rational(1, dil.abs_det));
    e *= inv_d;
    LaurentMatrix qa = polyphase_row(a, dil);
    LaurentMatrix qat = polyphase_row(a_tilde, dil);
    return e - qa.star() * big_theta * qat;
}

DffbReport verify_dffb(const FrameletSystem& sys) {
    sys.validate_shapes();
    DffbReport rep;
    LaurentMatrix n = mixed_moment_block(sys.a, sys.a_tilde, sys.Theta(), sys.dil);
    LaurentMatrix rhs(n.rows(), n.cols(), n.dim(), n.cyc_order());
    if (sys.b && sys.b_tilde) {
        LaurentMatrix qb = polyphase_row(*sys.b, sys.dil);
        LaurentMatrix qbt = polyphase_row(*sys.b_tilde, sys.dil);
        rhs = qb.star() * qbt;
    }
    LaurentMatrix resid = n - rhs;
    if (resid.is_zero()) {
        rep.pass = true;
        return rep;
    }
    for (long i = 0; i < resid.rows(); ++i)
        for (long j = 0; j < resid.cols(); ++j) {
            if (resid.at(i, j).is_zero()) continue;
            std::ostringstream w;
            w << "mixed moment residual at block entry (" << i << "," << j
              << "): " << resid.at(i, j).to_string();
            rep.witness = w.str();
            return rep;
        }
    return rep;
}

}  // namespace framelet
