#pragma once

#include <stdexcept>

#include "dcfci/dataset.hpp"

namespace dcfci {

class FitFailure : public std::runtime_error {
public:
    FitFailure(const std::string& what, bool separation, int iterations)
        : std::runtime_error(what), separation(separation), iterations(iterations) {}
    bool separation;
    int iterations;
};

class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitResult {
    double loglik = 0;
    int params = 0;
    int iterations = 0;
};

inline constexpr int kMaxIterations = 100;
inline constexpr double kRelTolerance = 1e-8;
inline constexpr double kRidgeJitter = 1e-10;

FitResult fit_linear(const Dataset& d, int response, const VarSet& predictors);
FitResult fit_logistic(const Dataset& d, int response, const VarSet& predictors);
FitResult fit_multinomial(const Dataset& d, int response, const VarSet& predictors);

// Chooses the model by the response column's kind.
FitResult fit_regression(const Dataset& d, int response, const VarSet& predictors);

// Columns contributed by one predictor (1 for continuous, levels-1 otherwise).
int design_width(VarKind k);

}  // namespace dcfci
