#include "mombound/linalg3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace mombound::linalg3 {

double determinant(const Matrix3& a) noexcept {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double dot(const Vector3& a, const Vector3& b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vector3& a) noexcept { return std::hypot(a[0], a[1], a[2]); }

Vector3 multiply(const Matrix3& a, const Vector3& x) noexcept {
    return {dot(a[0], x), dot(a[1], x), dot(a[2], x)};
}

std::optional<Vector3> solve(const Matrix3& a, const Vector3& b) noexcept {
    Matrix3 m = a;
    Vector3 r = b;
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
        }
        if (m[pivot][col] == 0.0) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(r[pivot], r[col]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int k = col; k < 3; ++k) m[row][k] -= f * m[col][k];
            r[row] -= f * r[col];
        }
    }
    Vector3 x{};
    for (int row = 2; row >= 0; --row) {
        double s = r[row];
        for (int k = row + 1; k < 3; ++k) s -= m[row][k] * x[k];
        x[row] = s / m[row][row];
    }
    return x;
}

std::optional<Vector3> eigenvalues_closed_form(const Matrix3& a) noexcept {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off == 0.0) {
        Vector3 d{a[0][0], a[1][1], a[2][2]};
        std::sort(d.begin(), d.end());
        return d;
    }
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    const double d0 = a[0][0] - q, d1 = a[1][1] - q, d2 = a[2][2] - q;
    const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
    if (!(p > 1e-8 * std::max(1.0, std::fabs(q)))) return std::nullopt;

    Matrix3 b = a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
    }
    const double r = determinant(b) / 2.0;
    // acos loses half the digits as |r| -> 1 (a double root)
    if (1.0 - std::fabs(r) < 1e-6) return std::nullopt;

    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double mid = 3.0 * q - hi - lo;
    Vector3 ev{lo, mid, hi};
    std::sort(ev.begin(), ev.end());
    return ev;
}

JacobiResult eigen_jacobi(const Matrix3& a) noexcept {
    Matrix3 m = a;
    Matrix3 v{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};  // columns accumulate
    double frob = 0.0;
    for (const auto& row : a)
        for (double x : row) frob += x * x;

    int sweep = 0;
    for (; sweep < 50; ++sweep) {
        const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        if (off == 0.0 || off <= 1e-34 * frob) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (m[p][q] == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m[i][i] < m[j][j]; });
    JacobiResult out;
    out.sweeps = sweep;
    for (int k = 0; k < 3; ++k) {
        const int c = order[k];
        out.values[k] = m[c][c];
        out.vectors[k] = {v[0][c], v[1][c], v[2][c]};
    }
    return out;
}

Vector3 symmetric_eigenvalues(const Matrix3& a) noexcept {
    if (auto ev = eigenvalues_closed_form(a)) return *ev;
    return eigen_jacobi(a).values;
}

Vector3 inverse_iteration(const Matrix3& a, double shift, const Vector3& start, int max_iter) noexcept {
    Matrix3 shifted = a;
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        shifted[i][i] -= shift;
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(a[i][j]));
    }

    const double n0 = norm(start);
    Vector3 x{start[0] / n0, start[1] / n0, start[2] / n0};
    for (int it = 0; it < max_iter; ++it) {
        auto y = solve(shifted, x);
        if (!y) {
            // shift hit an eigenvalue exactly; nudge it off
            const double nudge = std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
            for (int i = 0; i < 3; ++i) shifted[i][i] -= nudge;
            continue;
        }
        const double ny = norm(*y);
        if (!(ny > 0.0) || !std::isfinite(ny)) break;
        Vector3 next{(*y)[0] / ny, (*y)[1] / ny, (*y)[2] / ny};
        if (dot(next, x) < 0.0) next = {-next[0], -next[1], -next[2]};
        const double change = std::hypot(next[0] - x[0], next[1] - x[1], next[2] - x[2]);
        x = next;
        if (it >= 2 && change < 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    return x;
}

}  // namespace mombound::linalg3
