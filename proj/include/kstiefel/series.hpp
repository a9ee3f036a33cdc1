#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "kstiefel/scalar.hpp"

namespace kst {

// Exact integers: partition-type coefficients pass 2^63 below the degree
// cap (around degree 460 for the intermediate stratum products over R).
using BigInt = boost::multiprecision::cpp_int;

constexpr int kMaxSeriesDegree = 512;

// Polynomial truncated at a fixed degree, exact integer coefficients.
class PowerSeries {
  public:
    explicit PowerSeries(int degree);  // zero series
    static PowerSeries one(int degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const BigInt& coeff(int i) const;
    void set_coeff(int i, BigInt v);

    void add_shifted(const PowerSeries& s, int shift);
    // In-place multiplication by (1 - t^step)^{-1} (forward prefix sums)
    // and by (1 + t^step) (single backward pass).
    void mul_inv_one_minus(int step);
    void mul_one_plus(int step);
    void scale(const BigInt& s);

    bool operator==(const PowerSeries& other) const;

  private:
    std::vector<BigInt> c_;
};

// Real dimensions of the three representations attached to rank k and
// complement dimension m over the field:
//   nu  hom block, d k m
//   ad  skew-adjoint k x k block
//   sa  self-adjoint k x k block
struct RepDims {
    Field field;
    int k;
    int m;
    long long nu;
    long long ad;
    long long sa;
};

RepDims rep_dims(Field f, int k, int m);

// Dimensions of the stratum summands nu + ad for k = 0..k_max.
struct ThomSummand {
    int k;
    long long dim;
};
std::vector<ThomSummand> thom_dimension_table(Field f, int m, int k_max);

// Stratumwise Poincare series of the infinite-dimensional limit:
//   sum_k t^{ad(k)} prod_{j=1..k} (1 - t^{d j})^{-1}.
PowerSeries wedge_poincare(Field f, int degree);

// Closed product form of the same limit:
//   C  prod_{i>=1} (1 + t^{2i-1})
//   H  prod_{i>=1} (1 + t^{4i-1})
//   R  2 prod_{i>=1} (1 + t^i)
// Coefficientwise equality with wedge_poincare is an instance of Euler's
// q-binomial theorem specialized per field.
PowerSeries product_poincare(Field f, int degree);

struct SeriesComparison {
    Field field;
    int degree;
    bool equal;
    int first_mismatch;  // -1 when equal
    PowerSeries wedge;
    PowerSeries product;
};

SeriesComparison series_compare(Field f, int degree);

}  // namespace kst
