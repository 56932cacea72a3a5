#include "dcfci/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace dcfci {

int design_width(VarKind k) { return k.continuous() ? 1 : k.levels - 1; }

namespace {

void check_args(const Dataset& d, int response, const VarSet& predictors) {
    if (response < 0 || response >= d.cols()) throw std::invalid_argument("response index out of range");
    for (int v : predictors) {
        if (v < 0 || v >= d.cols()) throw std::invalid_argument("predictor index out of range");
        if (v == response) throw std::invalid_argument("response listed among its own predictors");
    }
}

Eigen::MatrixXd design(const Dataset& d, const VarSet& predictors) {
    int w = 1;
    for (int v : predictors) w += design_width(d.column(v).kind);
    const int n = d.rows();
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, w);
    X.col(0).setOnes();
    int c = 1;
    for (int v : predictors) {
        const auto& col = d.column(v);
        if (col.kind.continuous()) {
            for (int i = 0; i < n; ++i) X(i, c) = col.values[i];
            ++c;
        } else {
            for (int i = 0; i < n; ++i) {
                int lv = static_cast<int>(col.values[i]);
                if (lv > 0) X(i, c + lv - 1) = 1.0;
            }
            c += col.kind.levels - 1;
        }
    }
    return X;
}

// Solves A x = b for symmetric positive definite A. Adds a ridge jitter once
// before giving up.
Eigen::VectorXd spd_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        Eigen::MatrixXd M = A;
        if (attempt == 1) M.diagonal().array() += kRidgeJitter;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
        if (ldlt.info() != Eigen::Success) continue;
        const auto& D = ldlt.vectorD();
        double dmax = D.cwiseAbs().maxCoeff();
        if (!(dmax > 0) || D.minCoeff() <= 1e-12 * dmax) continue;
        return ldlt.solve(b);
    }
    throw DegenerateInput("design matrix is rank deficient");
}

bool converged(double old_ll, double new_ll) {
    return std::abs(new_ll - old_ll) <= kRelTolerance * std::max(std::abs(old_ll), 1e-300);
}

constexpr double kSeparationEta = 30.0;

}  // namespace

FitResult fit_linear(const Dataset& d, int response, const VarSet& predictors) {
    check_args(d, response, predictors);
    if (!d.column(response).kind.continuous()) throw std::invalid_argument("linear model needs a continuous response");
    Eigen::MatrixXd X = design(d, predictors);
    const int n = d.rows(), w = static_cast<int>(X.cols());
    if (n <= w + 1) throw std::invalid_argument("too few rows for the model");
    Eigen::Map<const Eigen::VectorXd> y(d.column(response).values.data(), n);
    Eigen::VectorXd beta = spd_solve(X.transpose() * X, X.transpose() * y);
    double rss = (y - X * beta).squaredNorm();
    double s2 = std::max(rss / n, std::numeric_limits<double>::min());
    FitResult r;
    r.loglik = -0.5 * n * (std::log(2 * std::numbers::pi * s2) + 1.0);
    r.params = w + 1;
    r.iterations = 1;
    return r;
}

FitResult fit_logistic(const Dataset& d, int response, const VarSet& predictors) {
    check_args(d, response, predictors);
    const auto& col = d.column(response);
    if (col.kind.levels != 2) throw std::invalid_argument("logistic model needs a binary response");
    Eigen::MatrixXd X = design(d, predictors);
    const int n = d.rows(), w = static_cast<int>(X.cols());
    if (n <= w) throw std::invalid_argument("too few rows for the model");
    Eigen::Map<const Eigen::VectorXd> y(col.values.data(), n);
    double ones = y.sum();
    if (ones == 0 || ones == n) throw std::invalid_argument("binary response has a single observed level");

    auto loglik = [&](const Eigen::VectorXd& eta) {
        double ll = 0;
        for (int i = 0; i < n; ++i) {
            // log(1 + e^eta) computed stably
            double l1p = eta[i] > 0 ? eta[i] + std::log1p(std::exp(-eta[i])) : std::log1p(std::exp(eta[i]));
            ll += y[i] * eta[i] - l1p;
        }
        return ll;
    };

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(w);
    beta[0] = std::log(ones / (n - ones));
    Eigen::VectorXd eta = X * beta;
    double ll = loglik(eta);
    for (int it = 1; it <= kMaxIterations; ++it) {
        Eigen::VectorXd mu = (1.0 + (-eta.array()).exp()).inverse().matrix();
        Eigen::VectorXd wts = (mu.array() * (1.0 - mu.array())).matrix();
        Eigen::MatrixXd H = X.transpose() * wts.asDiagonal() * X;
        Eigen::VectorXd g = X.transpose() * (y - mu);
        Eigen::VectorXd step = spd_solve(H, g);
        double t = 1.0, nll = 0;
        Eigen::VectorXd nbeta, neta;
        for (int half = 0; half < 30; ++half, t *= 0.5) {
            nbeta = beta + t * step;
            neta = X * nbeta;
            nll = loglik(neta);
            if (nll >= ll - 1e-12 * std::abs(ll)) break;
        }
        if (neta.cwiseAbs().maxCoeff() > kSeparationEta)
            throw FitFailure("logistic fit: separation (diverging coefficients)", true, it);
        bool done = converged(ll, nll);
        beta = nbeta;
        eta = neta;
        ll = nll;
        if (done) return {ll, w, it};
    }
    throw FitFailure("logistic fit did not converge", false, kMaxIterations);
}

FitResult fit_multinomial(const Dataset& d, int response, const VarSet& predictors) {
    check_args(d, response, predictors);
    const auto& col = d.column(response);
    const int K = col.kind.levels;
    if (K < 2) throw std::invalid_argument("multinomial model needs a categorical response");
    Eigen::MatrixXd X = design(d, predictors);
    const int n = d.rows(), w = static_cast<int>(X.cols()), m = K - 1, P = m * w;
    if (n <= P) throw std::invalid_argument("too few rows for the model");
    std::vector<int> y(n);
    std::vector<double> counts(K, 0);
    for (int i = 0; i < n; ++i) {
        y[i] = static_cast<int>(col.values[i]);
        counts[y[i]] += 1;
    }
    for (int k = 0; k < K; ++k)
        if (counts[k] == 0) throw std::invalid_argument("multinomial response: level " + std::to_string(k) + " not observed");

    // B column k-1 holds the coefficients of level k against level 0
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(w, m);
    for (int k = 1; k < K; ++k) B(0, k - 1) = std::log(counts[k] / counts[0]);

    auto evaluate = [&](const Eigen::MatrixXd& Bc, Eigen::MatrixXd& prob, double& maxeta) {
        Eigen::MatrixXd eta = X * Bc;
        maxeta = eta.size() ? eta.cwiseAbs().maxCoeff() : 0.0;
        prob.resize(n, K);
        double ll = 0;
        for (int i = 0; i < n; ++i) {
            double mx = 0;
            for (int k = 0; k < m; ++k) mx = std::max(mx, eta(i, k));
            double denom = std::exp(-mx);
            for (int k = 0; k < m; ++k) denom += std::exp(eta(i, k) - mx);
            double lse = mx + std::log(denom);
            prob(i, 0) = std::exp(-lse);
            for (int k = 0; k < m; ++k) prob(i, k + 1) = std::exp(eta(i, k) - lse);
            ll += (y[i] == 0 ? 0.0 : eta(i, y[i] - 1)) - lse;
        }
        return ll;
    };

    Eigen::MatrixXd prob;
    double maxeta = 0;
    double ll = evaluate(B, prob, maxeta);
    for (int it = 1; it <= kMaxIterations; ++it) {
        Eigen::VectorXd g(P);
        for (int k = 0; k < m; ++k) {
            Eigen::VectorXd r(n);
            for (int i = 0; i < n; ++i) r[i] = (y[i] == k + 1 ? 1.0 : 0.0) - prob(i, k + 1);
            g.segment(k * w, w) = X.transpose() * r;
        }
        Eigen::MatrixXd H(P, P);
        for (int k = 0; k < m; ++k)
            for (int l = k; l < m; ++l) {
                Eigen::VectorXd wt(n);
                for (int i = 0; i < n; ++i)
                    wt[i] = prob(i, k + 1) * ((k == l ? 1.0 : 0.0) - prob(i, l + 1));
                Eigen::MatrixXd blk = X.transpose() * wt.asDiagonal() * X;
                H.block(k * w, l * w, w, w) = blk;
                H.block(l * w, k * w, w, w) = blk.transpose();
            }
        Eigen::VectorXd step = spd_solve(H, g);
        double t = 1.0, nll = 0;
        Eigen::MatrixXd nB, nprob;
        for (int half = 0; half < 30; ++half, t *= 0.5) {
            nB = B;
            for (int k = 0; k < m; ++k) nB.col(k) += t * step.segment(k * w, w);
            nll = evaluate(nB, nprob, maxeta);
            if (nll >= ll - 1e-12 * std::abs(ll)) break;
        }
        if (maxeta > kSeparationEta) throw FitFailure("multinomial fit: separation (diverging coefficients)", true, it);
        bool done = converged(ll, nll);
        B = nB;
        prob = nprob;
        ll = nll;
        if (done) return {ll, P, it};
    }
    throw FitFailure("multinomial fit did not converge", false, kMaxIterations);
}

FitResult fit_regression(const Dataset& d, int response, const VarSet& predictors) {
    check_args(d, response, predictors);
    VarKind k = d.column(response).kind;
    if (k.continuous()) return fit_linear(d, response, predictors);
    if (k.levels == 2) return fit_logistic(d, response, predictors);
    return fit_multinomial(d, response, predictors);
}

}  // namespace dcfci
