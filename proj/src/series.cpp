#include "kstiefel/series.hpp"

#include <string>

namespace kst {

namespace {

void check_degree(int degree) {
    if (degree < 0 || degree > kMaxSeriesDegree)
        throw DimensionError("series degree " + std::to_string(degree) +
                             " outside [0, " +
                             std::to_string(kMaxSeriesDegree) + "]");
}

long long ad_dim(Field f, long long k) {
    switch (f) {
        case Field::R: return k * (k - 1) / 2;
        case Field::C: return k * k;
        case Field::H: return k * (2 * k + 1);
    }
    throw FieldMismatchError("corrupt field tag");
}

long long sa_dim(Field f, long long k) {
    switch (f) {
        case Field::R: return k * (k + 1) / 2;
        case Field::C: return k * k;
        case Field::H: return k * (2 * k - 1);
    }
    throw FieldMismatchError("corrupt field tag");
}

}  // namespace

PowerSeries::PowerSeries(int degree) {
    check_degree(degree);
    c_.assign(static_cast<std::size_t>(degree) + 1, BigInt(0));
}

PowerSeries PowerSeries::one(int degree) {
    PowerSeries s(degree);
    s.c_[0] = 1;
    return s;
}

const BigInt& PowerSeries::coeff(int i) const {
    if (i < 0 || i > degree())
        throw DimensionError("series coefficient index out of range");
    return c_[static_cast<std::size_t>(i)];
}

void PowerSeries::set_coeff(int i, BigInt v) {
    if (i < 0 || i > degree())
        throw DimensionError("series coefficient index out of range");
    c_[static_cast<std::size_t>(i)] = std::move(v);
}

void PowerSeries::add_shifted(const PowerSeries& s, int shift) {
    if (shift < 0) throw DimensionError("negative series shift");
    for (int i = 0; i + shift <= degree() && i <= s.degree(); ++i)
        c_[static_cast<std::size_t>(i + shift)] += s.c_[i];
}

void PowerSeries::mul_inv_one_minus(int step) {
    if (step <= 0) throw DimensionError("series step must be positive");
    for (int n = step; n <= degree(); ++n)
        c_[static_cast<std::size_t>(n)] +=
            c_[static_cast<std::size_t>(n - step)];
}

void PowerSeries::mul_one_plus(int step) {
    if (step <= 0) throw DimensionError("series step must be positive");
    for (int n = degree(); n >= step; --n)
        c_[static_cast<std::size_t>(n)] +=
            c_[static_cast<std::size_t>(n - step)];
}

void PowerSeries::scale(const BigInt& s) {
    for (BigInt& v : c_) v *= s;
}

bool PowerSeries::operator==(const PowerSeries& other) const {
    return c_ == other.c_;
}

RepDims rep_dims(Field f, int k, int m) {
    if (k < 0 || m < 0)
        throw DimensionError("rep_dims: negative parameters");
    return {f, k, m, static_cast<long long>(real_dim(f)) * k * m,
            ad_dim(f, k), sa_dim(f, k)};
}

std::vector<ThomSummand> thom_dimension_table(Field f, int m, int k_max) {
    if (m < 0 || k_max < 0)
        throw DimensionError("thom_dimension_table: negative parameters");
    std::vector<ThomSummand> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        RepDims d = rep_dims(f, k, m);
        out.push_back({k, d.nu + d.ad});
    }
    return out;
}

PowerSeries wedge_poincare(Field f, int degree) {
    check_degree(degree);
    const int d = real_dim(f);
    PowerSeries acc(degree);
    // prod tracks prod_{j=1..k} (1 - t^{d j})^{-1} as k advances.
    PowerSeries prod = PowerSeries::one(degree);
    for (long long k = 0; ad_dim(f, k) <= degree; ++k) {
        if (k > 0) prod.mul_inv_one_minus(d * static_cast<int>(k));
        acc.add_shifted(prod, static_cast<int>(ad_dim(f, k)));
    }
    return acc;
}

PowerSeries product_poincare(Field f, int degree) {
    check_degree(degree);
    PowerSeries acc = PowerSeries::one(degree);
    switch (f) {
        case Field::R:
            for (int i = 1; i <= degree; ++i) acc.mul_one_plus(i);
            acc.scale(2);
            break;
        case Field::C:
            for (int i = 1; 2 * i - 1 <= degree; ++i)
                acc.mul_one_plus(2 * i - 1);
            break;
        case Field::H:
            for (int i = 1; 4 * i - 1 <= degree; ++i)
                acc.mul_one_plus(4 * i - 1);
            break;
    }
    return acc;
}

SeriesComparison series_compare(Field f, int degree) {
    SeriesComparison out{f, degree, true, -1, wedge_poincare(f, degree),
                         product_poincare(f, degree)};
    for (int i = 0; i <= degree; ++i)
        if (out.wedge.coeff(i) != out.product.coeff(i)) {
            out.equal = false;
            out.first_mismatch = i;
            break;
        }
    return out;
}

}  // namespace kst
