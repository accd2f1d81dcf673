#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gso/graph.hpp"

namespace gso {

struct LaplacianSpectrum {
    Vec eigenvalues;  // ascending; entries within zero_tol of 0 snapped to exactly 0
    Mat U;            // orthonormal, column j pairs with eigenvalues[j]
    int rank = 0;     // count of nonzero eigenvalues
    double zero_tol = 0.0;
};

// Sign convention: first entry of each column larger than 1e-12 in magnitude is
// made positive, so spectra are reproducible across eigensolver builds.
inline void fix_eigenvector_signs(Mat& U) {
    for (Eigen::Index j = 0; j < U.cols(); ++j) {
        for (Eigen::Index i = 0; i < U.rows(); ++i) {
            const double u = U(i, j);
            if (std::abs(u) > 1e-12) {
                if (u < 0.0) U.col(j) = -U.col(j);
                break;
            }
        }
    }
}

inline LaplacianSpectrum spectrum(const Graph& g, std::optional<double> zero_tol = std::nullopt) {
    const Mat L = laplacian(g);
    Eigen::SelfAdjointEigenSolver<Mat> es(L);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed to converge");
    LaplacianSpectrum sp;
    sp.eigenvalues = es.eigenvalues();
    sp.U = es.eigenvectors();
    const double lam_max = sp.eigenvalues.cwiseAbs().maxCoeff();
    sp.zero_tol = zero_tol ? *zero_tol : 1e-9 * lam_max;
    if (sp.zero_tol < 0.0) throw std::invalid_argument("spectrum: zero_tol must be >= 0");
    sp.rank = 0;
    for (Eigen::Index j = 0; j < sp.eigenvalues.size(); ++j) {
        if (std::abs(sp.eigenvalues[j]) <= sp.zero_tol)
            sp.eigenvalues[j] = 0.0;
        else if (sp.eigenvalues[j] > 0.0)
            ++sp.rank;
    }
    fix_eigenvector_signs(sp.U);
    return sp;
}

inline Vec gft(const LaplacianSpectrum& sp, const Vec& y) {
    if (y.size() != sp.U.rows()) throw std::invalid_argument("gft: signal length mismatch");
    return sp.U.transpose() * y;
}

inline Vec igft(const LaplacianSpectrum& sp, const Vec& yt) {
    if (yt.size() != sp.U.rows()) throw std::invalid_argument("igft: coefficient length mismatch");
    return sp.U * yt;
}

}  // namespace gso
