#include "vvaf/repr.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vvaf {

namespace {

struct Cluster {
    cplx mean;
    int size;
};

Matrix mat_pow(const Matrix& a, int k) {
    Matrix r = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

// Orthonormal basis of ker(A) at relative tolerance, plus its dimension.
Matrix null_space(const Matrix& a, double rtol, double scale) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int n = static_cast<int>(a.cols());
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rtol * scale) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

int nullity(const Matrix& a, double rtol, double scale) {
    return static_cast<int>(null_space(a, rtol, scale).cols());
}

Matrix orthonormal_basis(const Matrix& b) {
    if (b.cols() == 0) return b;
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++r;
    return svd.matrixU().leftCols(r);
}

Vector normalize_phase(Vector v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    cplx p = v(imax);
    v *= std::abs(p) / p;
    return v / v.norm();
}

// Rank profile of N^j, j = 1..k, consistent with Jordan blocks spanning exactly k dimensions.
bool profile_ok(const Matrix& nmat, int k, double tol, double mnorm) {
    std::vector<int> nul(k + 1, 0);
    Matrix p = Matrix::Identity(nmat.rows(), nmat.cols());
    for (int j = 1; j <= k; ++j) {
        p = p * nmat;
        nul[j] = nullity(p, tol, std::pow(mnorm, j));
        if (nul[j] < nul[j - 1]) return false;
    }
    if (nul[k] != k || nul[1] < 1) return false;
    for (int j = 1; j < k; ++j)
        if (nul[j + 1] - nul[j] > nul[j] - nul[j - 1]) return false;
    return true;
}

}  // namespace

JordanData jordan_form(const Matrix& m, double tol) {
    const int n = static_cast<int>(m.rows());
    JordanData out{Matrix::Zero(n, n), Matrix::Zero(n, n), {}, tol, 0.0, true, ""};
    if (n == 0) return out;
    if (m.cols() != n) throw std::invalid_argument("jordan_form: matrix must be square");

    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    const double mnorm = std::max(1.0, m.norm());

    // First pass: clustering at tol.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(ev[i] - ev[j]) < tol * std::max(1.0, std::abs(ev[i]))) parent[find(i)] = find(j);

    auto collect = [&]() {
        std::vector<Cluster> cs;
        std::vector<int> roots;
        for (int i = 0; i < n; ++i) {
            int r = find(i);
            auto it = std::find(roots.begin(), roots.end(), r);
            if (it == roots.end()) {
                roots.push_back(r);
                cs.push_back({ev[i], 1});
            } else {
                auto& c = cs[it - roots.begin()];
                c.mean += ev[i];
                ++c.size;
            }
        }
        for (auto& c : cs) c.mean /= static_cast<double>(c.size);
        return std::make_pair(cs, roots);
    };

    // Second pass: a defective eigenvalue splits into a ring of radius ~ε^{1/k};
    // merge nearby clusters when the merged mean has a full generalized eigenspace.
    for (bool merged = true; merged;) {
        merged = false;
        auto [cs, roots] = collect();
        double best = 1e-3 * mnorm;
        int bi = -1, bj = -1;
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                double d = std::abs(cs[i].mean - cs[j].mean);
                if (d < best) {
                    cplx mean = (cs[i].mean * double(cs[i].size) + cs[j].mean * double(cs[j].size)) /
                                double(cs[i].size + cs[j].size);
                    int k = cs[i].size + cs[j].size;
                    if (profile_ok(m - mean * Matrix::Identity(n, n), k, tol, mnorm)) {
                        best = d;
                        bi = static_cast<int>(i);
                        bj = static_cast<int>(j);
                    }
                }
            }
        if (bi >= 0) {
            parent[find(roots[bi])] = find(roots[bj]);
            merged = true;
        }
    }

    auto clusters = collect().first;
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& x, const Cluster& y) {
        if (std::abs(x.mean.real() - y.mean.real()) > 1e-9) return x.mean.real() < y.mean.real();
        return x.mean.imag() < y.mean.imag();
    });

    int col = 0;
    for (const auto& cl : clusters) {
        const int a = cl.size;
        Matrix N = m - cl.mean * Matrix::Identity(n, n);
        std::vector<Matrix> ker(a + 1);
        std::vector<int> nul(a + 1, 0);
        ker[0] = Matrix::Zero(n, 0);
        for (int j = 1; j <= a; ++j) {
            ker[j] = null_space(mat_pow(N, j), tol, std::pow(mnorm, j));
            nul[j] = std::min<int>(static_cast<int>(ker[j].cols()), a);
            if (nul[j] < nul[j - 1]) nul[j] = nul[j - 1];
        }
        if (nul[a] != a) {
            out.reliable = false;
            out.diagnostic = "generalized eigenspace dimension mismatch";
            nul[a] = a;
        }
        // ge[j] = number of blocks of size ≥ j.
        std::vector<int> ge(a + 2, 0);
        for (int j = 1; j <= a; ++j) ge[j] = nul[j] - nul[j - 1];
        for (int j = 1; j < a; ++j)
            if (ge[j + 1] > ge[j]) {
                out.reliable = false;
                out.diagnostic = "inconsistent rank profile";
                ge[j + 1] = ge[j];
            }

        struct Chain { Vector gen; int size; };
        std::vector<Chain> chains;
        for (int k = a; k >= 1; --k) {
            int count = ge[k] - ge[k + 1];
            for (int c = 0; c < count; ++c) {
                Matrix b = ker[k - 1];
                for (const auto& ch : chains) {
                    Vector w = ch.gen;
                    for (int i = 0; i < ch.size; ++i) {
                        if (i >= ch.size - k) {
                            b.conservativeResize(n, b.cols() + 1);
                            b.col(b.cols() - 1) = w;
                        }
                        w = N * w;
                    }
                }
                Matrix q = orthonormal_basis(b);
                double best_norm = -1;
                Vector best;
                for (int i = 0; i < ker[k].cols(); ++i) {
                    Vector v = ker[k].col(i);
                    if (q.cols() > 0) v -= q * (q.adjoint() * v);
                    if (v.norm() > best_norm) {
                        best_norm = v.norm();
                        best = v;
                    }
                }
                if (best_norm < 1e-6) {
                    out.reliable = false;
                    out.diagnostic = "could not extend Jordan chain";
                    if (best_norm <= 0) continue;
                }
                chains.push_back({normalize_phase(best), k});
            }
        }
        for (const auto& ch : chains) {
            std::vector<Vector> vs(ch.size);
            Vector w = ch.gen;
            for (int i = ch.size - 1; i >= 0; --i) {
                vs[i] = w;
                w = N * w;
            }
            for (int i = 0; i < ch.size && col < n; ++i) {
                out.P.col(col) = vs[i];
                out.J(col, col) = cl.mean;
                if (i > 0) out.J(col - 1, col) = 1.0;
                ++col;
            }
            out.blocks.push_back({cl.mean, ch.size});
        }
    }

    if (col != n) {
        out.reliable = false;
        out.diagnostic = "block sizes do not sum to the dimension";
        out.reconstruction_error = std::numeric_limits<double>::infinity();
        return out;
    }
    Eigen::FullPivLU<Matrix> lu(out.P);
    if (!lu.isInvertible()) {
        out.reliable = false;
        out.diagnostic = "singular change of basis";
        out.reconstruction_error = std::numeric_limits<double>::infinity();
        return out;
    }
    Matrix recon = out.P * out.J * lu.inverse();
    out.reconstruction_error = (recon - m).cwiseAbs().maxCoeff();
    if (out.reconstruction_error > 1e-6 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        out.reliable = false;
        if (out.diagnostic.empty()) out.diagnostic = "reconstruction error exceeds 1e-6; ill-conditioned input";
    }
    return out;
}

}  // namespace vvaf
