#include "dcfci/ci_test.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcfci/chi_square.hpp"
#include "dcfci/regression.hpp"

namespace dcfci {

CITestKey CITestKey::make(int x, int y, VarSet z) {
    if (x == y) throw std::invalid_argument("CI test endpoints must differ");
    if (x > y) std::swap(x, y);
    std::sort(z.begin(), z.end());
    if (std::adjacent_find(z.begin(), z.end()) != z.end()) throw std::invalid_argument("duplicate conditioning variable");
    for (int v : z)
        if (v == x || v == y) throw std::invalid_argument("conditioning set contains an endpoint");
    return {x, y, std::move(z)};
}

std::size_t CITestKeyHash::operator()(const CITestKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 1315423911u ^ static_cast<std::size_t>(k.y) * 2654435761u;
    for (int v : k.z) h = (h ^ static_cast<std::size_t>(v + 1)) * 1099511628211ULL;
    return h;
}

std::string format_key(const std::vector<std::string>& names, const CITestKey& k) {
    std::string s = names[k.x] + " _||_ " + names[k.y] + " | {";
    for (std::size_t i = 0; i < k.z.size(); ++i) {
        if (i) s += ',';
        s += names[k.z[i]];
    }
    return s + "}";
}

double combine_p_values(double p1, double p2) {
    double p = std::min(2 * std::min(p1, p2), std::max(p1, p2));
    return std::clamp(p, 0.0, 1.0);
}

namespace {

struct Direction {
    double statistic;
    int df;
    double log_p;
};

Direction one_direction(const Dataset& d, int response, int predictor, const VarSet& z) {
    VarSet full = z;
    full.push_back(predictor);
    FitResult reduced = fit_regression(d, response, z);
    FitResult fuller = fit_regression(d, response, full);
    double lr = 2.0 * (fuller.loglik - reduced.loglik);
    double tol = 1e-6 * std::max(1.0, std::abs(fuller.loglik));
    if (lr < -tol) throw FitFailure("likelihood ratio is negative beyond tolerance", false, fuller.iterations);
    lr = std::max(lr, 0.0);
    int df = fuller.params - reduced.params;
    return {lr, df, chi_square_log_sf(lr, df)};
}

}  // namespace

CITestResult lr_test(const Dataset& d, const CITestKey& key) {
    const int p = d.cols();
    if (key.x < 0 || key.y >= p) throw std::invalid_argument("CI test variable out of range");
    for (int v : key.z)
        if (v < 0 || v >= p) throw std::invalid_argument("CI test variable out of range");
    int params = 1;
    for (int v : key.z) params += design_width(d.column(v).kind);
    params += std::max(design_width(d.column(key.x).kind), design_width(d.column(key.y).kind));
    if (d.rows() < params + 2) throw std::invalid_argument("not enough rows for the conditioning set");

    Direction a = one_direction(d, key.y, key.x, key.z);
    Direction b = one_direction(d, key.x, key.y, key.z);
    CITestResult r;
    r.df = a.df;
    r.p1 = std::exp(a.log_p);
    r.p2 = std::exp(b.log_p);
    double lo = std::min(a.log_p, b.log_p), hi = std::max(a.log_p, b.log_p);
    double log_p = std::min(std::log(2.0) + lo, hi);
    log_p = std::min(log_p, 0.0);
    r.p_value = std::exp(log_p);
    if (std::isinf(a.statistic) || std::isinf(b.statistic) || std::isinf(log_p))
        r.statistic = std::min(a.statistic, b.statistic);
    else
        r.statistic = chi_square_isf_log(log_p, r.df);
    return r;
}

CITestResult CITestCache::get(const CITestKey& key, const Compute& compute) {
    std::promise<CITestResult> promise;
    std::shared_future<CITestResult> future;
    bool owner = false;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            future = it->second;
        } else {
            future = promise.get_future().share();
            entries_.emplace(key, future);
            owner = true;
        }
    }
    if (owner) {
        ++computations_;
        try {
            promise.set_value(compute(key));
        } catch (...) {
            promise.set_exception(std::current_exception());
        }
    }
    return future.get();
}

std::size_t CITestCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

}  // namespace dcfci
