// Chebyshev-Gauss-Lobatto collocation on an interval [0, L]: nodes,
// differentiation matrix, and Clenshaw-Curtis quadrature weights. Nodes
// cluster like N^-2 at the ends, which is what resolves the sqrt(eps mu)
// wall layers of the dissipative wave runs.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

namespace mhdlab::cheb {

struct Collocation {
    std::vector<double> y;    // nodes, ascending in [0, L]
    Eigen::MatrixXd D;        // first derivative at the nodes
    std::vector<double> w;    // quadrature weights
    double L = 0.0;

    int count() const { return static_cast<int>(y.size()); }
};

// Trefethen-style differentiation matrix on xi_j = cos(pi j / N), mapped to
// y = L (1 - xi) / 2 so y ascends from 0 to L.
inline Collocation collocation(int N, double L) {
    if (N < 4) throw std::invalid_argument("collocation: need at least 5 nodes");
    const int n = N + 1;
    Collocation c;
    c.L = L;
    c.y.resize(n);
    std::vector<double> xi(n), coef(n);
    for (int j = 0; j <= N; ++j) {
        xi[j] = std::cos(std::numbers::pi * j / N);
        c.y[j] = 0.5 * L * (1.0 - xi[j]);
        coef[j] = (j == 0 || j == N) ? 2.0 : 1.0;
    }

    Eigen::MatrixXd Dxi(n, n);
    for (int i = 0; i <= N; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j <= N; ++j) {
            if (i != j) {
                const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                Dxi(i, j) = coef[i] / coef[j] * sign / (xi[i] - xi[j]);
                rowsum += Dxi(i, j);
            }
        }
        Dxi(i, i) = -rowsum; // negative sum trick
    }
    c.D = Dxi * (-2.0 / L); // chain rule for y = L(1-xi)/2

    // Clenshaw-Curtis weights on [-1,1], mapped by |dy/dxi| = L/2.
    c.w.resize(n);
    for (int j = 0; j <= N; ++j) {
        double s = 1.0;
        for (int k = 1; k <= N / 2; ++k) {
            const double bk = (2 * k == N) ? 1.0 : 2.0;
            s -= bk * std::cos(2.0 * k * std::numbers::pi * j / N) / (4.0 * k * k - 1.0);
        }
        const double cj = (j == 0 || j == N) ? 1.0 : 2.0;
        c.w[j] = 0.5 * L * cj * s / N;
    }
    return c;
}

inline int nodes_inside_layer(const Collocation& c, double width) {
    int count = 0;
    for (double y : c.y)
        if (y <= width || c.L - y <= width) ++count;
    return count / 2; // per wall
}

} // namespace mhdlab::cheb
