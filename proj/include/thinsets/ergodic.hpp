#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thinsets/signal.hpp"
#include "thinsets/thinset.hpp"

namespace thinsets {

// Observable on the torus, one factor per dimension; integrals are known in
// closed form so convergence targets are checkable.
struct Observable1D {
    enum class Kind { indicator, cosine, sine, constant };
    Kind kind = Kind::constant;
    double a = 0.0;  // indicator lower end, or the constant value
    double b = 0.0;  // indicator upper end

    double eval(double x) const;
    double integral() const;
    double min_value() const;
    double max_value() const;
};

// "indicator:a,b" | "cos" | "sin" | "const:c"
Observable1D parse_observable(const std::string& spec);

struct RotationSystem {
    std::vector<double> theta;        // rotation angle per dimension, in (0,1)
    std::vector<Observable1D> f;      // product observable, one factor per dim
    int dim() const { return static_cast<int>(theta.size()); }
    double integral() const;
    double eval(const std::vector<double>& x) const;
};

// Validates dimension consistency and that each angle is an irrational
// surrogate: continued-fraction depth >= 20 within binary64.
RotationSystem make_rotation(std::vector<double> theta, std::vector<Observable1D> f);

int continued_fraction_depth(double theta, int max_depth = 24);

// (1/|B cap [1,N]|) sum_{n in B cap [1,N]} f({x0 + n theta}), 1-D system.
double ergodic_average(const ThinSet& ts, const RotationSystem& sys, double x0, int64_t N);

// Product-set average over commuting rotations, evaluated by the exact
// factorization into 1-D averages (the observable is a product).
double multiparam_average(const std::vector<const ThinSet*>& sets, const RotationSystem& sys,
                          const std::vector<double>& x0, const std::vector<int64_t>& N);

// Direct nested summation over the product of element lists; the cross-check
// route for the factorized form. Cost grows as the product of the set sizes.
double multiparam_average_direct(const std::vector<const ThinSet*>& sets,
                                 const RotationSystem& sys, const std::vector<double>& x0,
                                 const std::vector<int64_t>& N);

struct ConvergenceTrace {
    std::vector<int64_t> N_grid;
    std::vector<double> averages;
    double reference = 0.0;            // the observable's integral
    std::vector<double> deviations;    // |average - reference|
    std::vector<double> increments;    // |a_{i+1} - a_i|
    double max_increment_top = 0.0;    // over the top half of the grid
    double max_increment_bottom = 0.0;
};

ConvergenceTrace convergence_trace(const ThinSet& ts, const RotationSystem& sys, double x0,
                                   const std::vector<int64_t>& N_grid);

// Average along the integer shift system: (1/|B_N|) sum_{n in B_N} f(x - n),
// with the same summation order and arithmetic as apply_M, so the two agree
// bitwise (Calderon transference at finite scale).
double shift_system_average(const ThinSet& ts, const Signal& f, int64_t x, int64_t N);

}  // namespace thinsets
