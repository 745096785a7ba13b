#include "tvb/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include <Eigen/SVD>

#include "tvb/fourier.hpp"

namespace tvb {
namespace {

struct SliceSvd {
    Eigen::MatrixXcd u;
    Eigen::VectorXd s;
    Eigen::MatrixXcd v;
};

SliceSvd slice_svd(const Eigen::MatrixXcd& a) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SliceSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    if (!out.s.allFinite() || !out.u.allFinite() || !out.v.allFinite()) {
        throw NumericalFailure("slice SVD produced non-finite values");
    }
    return out;
}

// Shared core of t_svd, t_svt and weighted_t_svt. With shrink=false the
// singular values are kept as is and the full skinny rank is retained.
SvtResult decompose(const Tensor3& a, bool shrink, double tau, const WeightMatrix* w) {
    const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    const std::size_t p = std::min(n1, n2);
    const HalfSpectrum fa = forward_half(a);
    const std::size_t h = fa.half();

    std::vector<SliceSvd> parts(h);
    Eigen::MatrixXd svals(p, n3);
    HalfSpectrum fl(n1, n2, n3);
    for (std::size_t k = 0; k < h; ++k) {
        SliceSvd sv = slice_svd(fa.slice(k));
        if (shrink) {
            for (std::size_t j = 0; j < p; ++j) {
                const double t = w ? tau * w->w(Eigen::Index(j), Eigen::Index(k)) : tau;
                sv.s[Eigen::Index(j)] = std::max(sv.s[Eigen::Index(j)] - t, 0.0);
            }
        }
        fl.slice(k).noalias() = sv.u * sv.s.cast<cdouble>().asDiagonal() * sv.v.adjoint();
        svals.col(Eigen::Index(k)) = sv.s;
        if (k > 0 && n3 - k != k) svals.col(Eigen::Index(n3 - k)) = sv.s;
        parts[k] = std::move(sv);
    }

    std::size_t r = p;
    if (shrink) {
        r = 0;
        for (std::size_t k = 0; k < n3; ++k) {
            std::size_t nz = 0;
            while (nz < p && svals(Eigen::Index(nz), Eigen::Index(k)) > 0.0) ++nz;
            r = std::max(r, nz);
        }
    }

    SvtResult out;
    out.l = inverse_half(fl);
    TSvdFactors& f = out.factors;
    f.n1 = n1;
    f.n2 = n2;
    f.n3 = n3;
    f.r = r;
    f.svals = svals.topRows(Eigen::Index(r));
    f.u_hat = CTensor3(n1, r, n3);
    f.v_hat = CTensor3(n2, r, n3);
    for (std::size_t k = 0; k < n3; ++k) {
        const bool mirrored = k >= h;
        const SliceSvd& sv = parts[mirrored ? n3 - k : k];
        if (r == 0) continue;
        if (mirrored) {
            f.u_hat.slice(k) = sv.u.leftCols(Eigen::Index(r)).conjugate();
            f.v_hat.slice(k) = sv.v.leftCols(Eigen::Index(r)).conjugate();
        } else {
            f.u_hat.slice(k) = sv.u.leftCols(Eigen::Index(r));
            f.v_hat.slice(k) = sv.v.leftCols(Eigen::Index(r));
        }
    }
    return out;
}

}  // namespace

void validate_weights(const WeightMatrix& w, std::size_t n1, std::size_t n2, std::size_t n3) {
    const std::size_t p = std::min(n1, n2);
    if (std::size_t(w.w.rows()) != p || std::size_t(w.w.cols()) != n3) {
        throw DimMismatch("weight matrix must be " + std::to_string(p) + "x" +
                          std::to_string(n3));
    }
    for (Eigen::Index k = 0; k < w.w.cols(); ++k) {
        for (Eigen::Index j = 0; j < w.w.rows(); ++j) {
            const double v = w.w(j, k);
            if (!std::isfinite(v) || v < 0.0) throw BadConfig("weights must be finite and >= 0");
            if (j > 0 && v < w.w(j - 1, k)) {
                throw NonMonotoneWeights("column " + std::to_string(k) + " decreases at row " +
                                         std::to_string(j));
            }
        }
        const Eigen::Index mk = (Eigen::Index(n3) - k) % Eigen::Index(n3);
        if (w.w.col(k) != w.w.col(mk)) {
            throw SymmetryViolation("weight columns k and n3-k must be equal");
        }
    }
}

WeightMatrix ones_weights(std::size_t n1, std::size_t n2, std::size_t n3) {
    return WeightMatrix{Eigen::MatrixXd::Ones(Eigen::Index(std::min(n1, n2)), Eigen::Index(n3))};
}

WeightMatrix pstnn_weights(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t k_trunc) {
    const std::size_t p = std::min(n1, n2);
    if (k_trunc > p) {
        throw BadTruncation("k_trunc " + std::to_string(k_trunc) + " exceeds min(n1,n2) = " +
                            std::to_string(p));
    }
    WeightMatrix w = ones_weights(n1, n2, n3);
    w.w.topRows(Eigen::Index(k_trunc)).setZero();
    return w;
}

TSvdFactors t_svd(const Tensor3& a) { return decompose(a, false, 0.0, nullptr).factors; }

Tensor3 reconstruct(const TSvdFactors& f) {
    HalfSpectrum hs(f.n1, f.n2, f.n3);
    for (std::size_t k = 0; k < hs.half(); ++k) {
        if (f.r == 0) continue;
        const Eigen::VectorXd s = f.svals.col(Eigen::Index(k));
        hs.slice(k).noalias() =
            f.u_hat.slice(k) * s.cast<cdouble>().asDiagonal() * f.v_hat.slice(k).adjoint();
    }
    return inverse_half(hs);
}

std::size_t tubal_rank(const Tensor3& a, double tol) {
    const TSvdFactors f = t_svd(a);
    if (f.r == 0 || f.n3 == 0) return 0;
    const double ref = f.svals(0, 0);
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < f.svals.rows(); ++i) {
        if (f.svals.row(i).maxCoeff() > tol * ref) ++count;
    }
    return count;
}

double tnn_from_svals(const Eigen::MatrixXd& svals, const WeightMatrix* w) {
    if (svals.cols() == 0) return 0.0;
    double s = 0.0;
    for (Eigen::Index k = 0; k < svals.cols(); ++k) {
        for (Eigen::Index j = 0; j < svals.rows(); ++j) {
            s += (w ? w->w(j, k) : 1.0) * svals(j, k);
        }
    }
    return s / double(svals.cols());
}

double tnn(const Tensor3& a) { return tnn_from_svals(t_svd(a).svals, nullptr); }

double weighted_tnn(const Tensor3& a, const WeightMatrix& w) {
    const std::size_t p = std::min(a.n1(), a.n2());
    if (std::size_t(w.w.rows()) != p || std::size_t(w.w.cols()) != a.n3()) {
        throw DimMismatch("weighted_tnn: weight matrix dims do not match tensor");
    }
    return tnn_from_svals(t_svd(a).svals, &w);
}

SvtResult t_svt(const Tensor3& a, double tau) {
    if (!(tau >= 0.0)) throw BadConfig("t_svt threshold must be >= 0");
    return decompose(a, true, tau, nullptr);
}

SvtResult weighted_t_svt(const Tensor3& a, double tau, const WeightMatrix& w) {
    if (!(tau >= 0.0)) throw BadConfig("weighted_t_svt threshold must be >= 0");
    validate_weights(w, a.n1(), a.n2(), a.n3());
    return decompose(a, true, tau, &w);
}

}  // namespace tvb
