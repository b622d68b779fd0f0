// Copyright 2026 The twirl Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "twirl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "twirl/error.hpp"

namespace twirl {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kPhaseCutoff = 1e-12;

double off_diagonal_norm2(const Eigen::MatrixXcd &a) {
    double acc = 0.0;
    const auto n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i != j) {
                acc += std::norm(a(i, j));
            }
        }
    }
    return acc;
}

// Zero a(p,q) with G = diag(1, e^{-i phi}) * [[c, s], [-s, c]], where
// a(p,q) = |a(p,q)| e^{i phi}. A <- G^H A G, V <- V G.
void rotate(Eigen::MatrixXcd &a, Eigen::MatrixXcd &v, Eigen::Index p,
            Eigen::Index q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const cplx unit = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cplx gpp = c;
    const cplx gpq = s;
    const cplx gqp = -s * std::conj(unit);
    const cplx gqq = c * std::conj(unit);

    const auto n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> column) {
    for (Eigen::Index k = 0; k < column.size(); ++k) {
        const double mag = std::abs(column[k]);
        if (mag > kPhaseCutoff) {
            column *= std::conj(column[k]) / mag;
            column[k] = mag;
            return;
        }
    }
}

// Replace the block's columns by Gram-Schmidt over P e_0, P e_1, ...
void canonicalize_block(SpectralDecomposition &spec, std::size_t first,
                        std::size_t last) {
    const auto width = static_cast<Eigen::Index>(last - first);
    const Eigen::MatrixXcd proj = spec.projector(first, last);
    const auto dim = proj.rows();
    Eigen::MatrixXcd basis(dim, width);
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < dim && found < width; ++k) {
        Eigen::VectorXcd candidate = proj.col(k);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < found; ++j) {
                candidate -= basis.col(j).dot(candidate) * basis.col(j);
            }
        }
        const double norm = candidate.norm();
        if (norm > 1e-6) {
            basis.col(found++) = candidate / norm;
        }
    }
    if (found != width) {
        return;
    }
    const double mean =
        spec.eigenvalues.segment(static_cast<Eigen::Index>(first), width).mean();
    for (Eigen::Index j = 0; j < width; ++j) {
        spec.eigenvectors.col(static_cast<Eigen::Index>(first) + j) = basis.col(j);
        spec.eigenvalues[static_cast<Eigen::Index>(first) + j] = mean;
    }
}

} // namespace

Eigen::MatrixXcd SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() *
           eigenvectors.adjoint();
}

std::vector<std::pair<std::size_t, std::size_t>>
SpectralDecomposition::degenerate_blocks(double tol) const {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    const auto n = dimension();
    std::size_t first = 0;
    while (first < n) {
        std::size_t last = first + 1;
        while (last < n &&
               eigenvalues[static_cast<Eigen::Index>(last)] -
                       eigenvalues[static_cast<Eigen::Index>(last - 1)] <=
                   tol) {
            ++last;
        }
        blocks.emplace_back(first, last);
        first = last;
    }
    return blocks;
}

Eigen::MatrixXcd SpectralDecomposition::projector(std::size_t first,
                                                  std::size_t last) const {
    const auto cols = eigenvectors.middleCols(static_cast<Eigen::Index>(first),
                                              static_cast<Eigen::Index>(last - first));
    return cols * cols.adjoint();
}

SpectralDecomposition hermitian_eigensystem(const Eigen::MatrixXcd &hermitian) {
    if (hermitian.rows() != hermitian.cols()) {
        throw DimensionError("eigensystem of a non-square matrix");
    }
    const auto n = hermitian.rows();
    const auto n_qubits = qubits_for_dimension(static_cast<std::size_t>(n));
    check_dense_limit(n_qubits);
    if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() >
        1e-10 * std::max(1.0, hermitian.cwiseAbs().maxCoeff())) {
        throw Error("matrix is not Hermitian");
    }

    Eigen::MatrixXcd a = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    const double scale2 = std::max(a.squaredNorm(), 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= 1e-32 * scale2) {
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > 1e-300) {
                    rotate(a, v, p, q);
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        return a(i, i).real() < a(j, j).real();
    });

    SpectralDecomposition spec;
    spec.n_qubits = n_qubits;
    spec.eigenvalues.resize(n);
    spec.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        spec.eigenvalues[k] = a(src, src).real();
        spec.eigenvectors.col(k) = v.col(src);
    }
    for (const auto &[first, last] : spec.degenerate_blocks()) {
        if (last - first > 1) {
            canonicalize_block(spec, first, last);
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        fix_phase(spec.eigenvectors.col(k));
    }
    return spec;
}

SpectralDecomposition eigendecompose(const PauliSum &h) {
    return hermitian_eigensystem(dense_matrix(h));
}

Eigen::VectorXcd evolve_exact_raw(const Eigen::VectorXcd &amps,
                                  const SpectralDecomposition &spec,
                                  double tau) {
    if (static_cast<std::size_t>(amps.size()) != spec.dimension()) {
        throw DimensionError("state and Hamiltonian dimensions differ");
    }
    Eigen::VectorXcd coeffs = spec.eigenvectors.adjoint() * amps;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
        coeffs[j] *= std::polar(1.0, -tau * spec.eigenvalues[j]);
    }
    return spec.eigenvectors * coeffs;
}

StateVector evolve_exact(const StateVector &state,
                         const SpectralDecomposition &spec, double tau) {
    if (!std::isfinite(tau)) {
        throw Error("evolution time must be finite");
    }
    return StateVector::normalized(state.qubits(),
                                   evolve_exact_raw(state.amplitudes(), spec, tau));
}

StateVector evolve_exact(const StateVector &state, const PauliSum &h,
                         double tau) {
    if (state.qubits() != h.qubits()) {
        throw DimensionError("state and Hamiltonian qubit counts differ");
    }
    return evolve_exact(state, eigendecompose(h), tau);
}

Eigen::MatrixXcd exact_propagator(const SpectralDecomposition &spec,
                                  double tau) {
    Eigen::VectorXcd phases(spec.eigenvalues.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) {
        phases[j] = std::polar(1.0, -tau * spec.eigenvalues[j]);
    }
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

OverlapDecomposition overlap_decomposition(const StateVector &state,
                                           const SpectralDecomposition &spec) {
    if (state.dimension() != spec.dimension()) {
        throw DimensionError("state and spectrum dimensions differ");
    }
    OverlapDecomposition out;
    out.amplitudes = spec.eigenvectors.adjoint() * state.amplitudes();
    out.weights = out.amplitudes.cwiseAbs2();
    return out;
}

std::string spectrum_csv(const SpectralDecomposition &spec) {
    std::ostringstream out;
    out << "index,eigenvalue\n" << std::setprecision(17);
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
        out << k << ',' << spec.eigenvalues[k] << '\n';
    }
    return out.str();
}

std::string spectrum_json(const SpectralDecomposition &spec) {
    std::ostringstream out;
    out << std::setprecision(17) << "{\"n_qubits\":" << spec.n_qubits
        << ",\"eigenvalues\":[";
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
        out << (k ? "," : "") << spec.eigenvalues[k];
    }
    out << "],\"eigenvectors\":[";
    for (Eigen::Index k = 0; k < spec.eigenvectors.cols(); ++k) {
        out << (k ? "," : "") << '[';
        for (Eigen::Index i = 0; i < spec.eigenvectors.rows(); ++i) {
            const auto z = spec.eigenvectors(i, k);
            out << (i ? "," : "") << '[' << z.real() << ',' << z.imag() << ']';
        }
        out << ']';
    }
    out << "]}";
    return out.str();
}

} // namespace twirl
