#include "optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmcap::optim {

namespace {

std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double step) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        const double up = f(probe);
        probe[i] = x[i] - step;
        const double down = f(probe);
        probe[i] = x[i];
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

}  // namespace

FdResult fd_maximize(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const FdOptions& opts) {
    FdResult res;
    res.params = std::move(x0);
    res.value = f(res.params);
    double rate = opts.init_rate;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        res.iterations = iter + 1;
        std::vector<double> g = fd_gradient(f, res.params, opts.step);
        double gnorm = 0.0;
        for (double gi : g) gnorm += gi * gi;
        gnorm = std::sqrt(gnorm);
        res.grad_norm = gnorm;
        if (gnorm < opts.tol) {
            res.converged = true;
            break;
        }

        bool accepted = false;
        for (int back = 0; back < 40; ++back) {
            std::vector<double> trial = res.params;
            for (std::size_t i = 0; i < trial.size(); ++i)
                trial[i] += rate * g[i] / gnorm;
            const double v = f(trial);
            if (v > res.value) {
                res.params = std::move(trial);
                res.value = v;
                rate *= 1.5;
                accepted = true;
                break;
            }
            rate *= 0.5;
            if (rate < 1e-14) break;
        }
        if (!accepted) {
            // Gradient direction exhausted; treat the remaining gradient norm
            // as the final residual.
            break;
        }
    }
    return res;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    int rho = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cum += u[i];
        const double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(0.0, v[i] - theta);
    return out;
}

double classical_mutual_information(const Eigen::VectorXd& p,
                                    const Eigen::MatrixXd& w) {
    const Eigen::Index m = w.cols();
    Eigen::VectorXd q = w.transpose() * p;
    double info = 0.0;
    for (Eigen::Index x = 0; x < w.rows(); ++x) {
        if (p[x] <= 0.0) continue;
        for (Eigen::Index y = 0; y < m; ++y) {
            const double wxy = w(x, y);
            if (wxy > 0.0 && q[y] > 0.0)
                info += p[x] * wxy * std::log(wxy / q[y]);
        }
    }
    return info;
}

BaResult blahut_arimoto(const Eigen::MatrixXd& w, const BaOptions& opts) {
    const Eigen::Index n = w.rows();
    const Eigen::Index m = w.cols();
    if (n == 0 || m == 0)
        throw std::invalid_argument("blahut_arimoto: empty channel");

    BaResult res;
    res.prior = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    Eigen::VectorXd d(n);
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        res.iterations = iter + 1;
        Eigen::VectorXd q = w.transpose() * res.prior;
        for (Eigen::Index x = 0; x < n; ++x) {
            double dx = 0.0;
            for (Eigen::Index y = 0; y < m; ++y) {
                const double wxy = w(x, y);
                if (wxy > 0.0 && q[y] > 0.0) dx += wxy * std::log(wxy / q[y]);
            }
            if (opts.cost) dx -= opts.lambda * (*opts.cost)[x];
            d[x] = dx;
        }
        double lower = res.prior.dot(d);
        double upper = d.maxCoeff();
        res.value = lower;
        res.gap = upper - lower;
        if (res.gap <= opts.tol * std::max(1.0, std::abs(lower))) break;

        const double dmax = d.maxCoeff();
        Eigen::VectorXd next(n);
        double z = 0.0;
        for (Eigen::Index x = 0; x < n; ++x) {
            next[x] = res.prior[x] * std::exp(d[x] - dmax);
            z += next[x];
        }
        res.prior = next / z;
    }
    return res;
}

}  // namespace qmcap::optim
