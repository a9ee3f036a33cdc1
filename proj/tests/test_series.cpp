#include <doctest.h>

#include <vector>

#include "kstiefel/rng.hpp"
#include "kstiefel/series.hpp"

using namespace kst;

namespace {

const Field kFields[] = {Field::R, Field::C, Field::H};

long long ad_oracle(Field f, long long k) {
    if (f == Field::R) return k * (k - 1) / 2;
    if (f == Field::C) return k * k;
    return k * (2 * k + 1);
}

// Counts partitions of n into parts of size at most k, for every k whose
// stratum shift stays under the degree; a classical dynamic program,
// nothing shared with the incremental series code under test.
std::vector<std::vector<unsigned long long>> bounded_partitions(int n_max,
                                                                int k_max) {
    std::vector<std::vector<unsigned long long>> p;
    p.emplace_back(n_max + 1, 0ull);
    p[0][0] = 1;
    for (int k = 1; k <= k_max; ++k) {
        p.push_back(p.back());
        for (int n = k; n <= n_max; ++n) p[k][n] += p[k][n - k];
    }
    return p;
}

// Stratum-sum oracle: coefficient n of sum_k t^{ad(k)} / prod (1 - t^{dj})
// counts, per k, partitions of (n - ad(k)) / d into parts at most k.
std::vector<unsigned long long> wedge_oracle(Field f, int degree) {
    const int d = real_dim(f);
    int k_max = 0;
    while (ad_oracle(f, k_max + 1) <= degree) ++k_max;
    auto p = bounded_partitions(degree / d, k_max);
    std::vector<unsigned long long> out(degree + 1, 0ull);
    for (int n = 0; n <= degree; ++n)
        for (int k = 0; k <= k_max; ++k) {
            long long rest = n - ad_oracle(f, k);
            if (rest < 0 || rest % d != 0) continue;
            out[n] += p[k][static_cast<int>(rest / d)];
        }
    return out;
}

// Subset-sum oracle for the product form: each generator may be used at
// most once.
std::vector<unsigned long long> distinct_sum_oracle(
    const std::vector<int>& gens, int degree, unsigned long long unit) {
    std::vector<unsigned long long> dp(degree + 1, 0ull);
    dp[0] = unit;
    for (int g : gens)
        for (int n = degree; n >= g; --n) dp[n] += dp[n - g];
    return dp;
}

std::vector<unsigned long long> product_oracle(Field f, int degree) {
    std::vector<int> gens;
    int first = (f == Field::R) ? 1 : (f == Field::C) ? 1 : 3;
    int step = (f == Field::R) ? 1 : (f == Field::C) ? 2 : 4;
    for (int g = first; g <= degree; g += step) gens.push_back(g);
    return distinct_sum_oracle(gens, degree, f == Field::R ? 2 : 1);
}

}  // namespace

TEST_CASE("representation dimensions at hand-checked ranks") {
    RepDims r = rep_dims(Field::R, 3, 2);
    CHECK(r.ad == 3);
    CHECK(r.sa == 6);
    CHECK(r.nu == 6);
    RepDims c = rep_dims(Field::C, 3, 2);
    CHECK(c.ad == 9);
    CHECK(c.sa == 9);
    CHECK(c.nu == 12);
    RepDims h = rep_dims(Field::H, 3, 2);
    CHECK(h.ad == 21);
    CHECK(h.sa == 15);
    CHECK(h.nu == 24);
}

TEST_CASE("skew and self-adjoint dimensions fill the matrix algebra") {
    for (Field f : kFields)
        for (int k = 0; k <= 12; ++k) {
            RepDims r = rep_dims(f, k, 0);
            CHECK(r.ad + r.sa == static_cast<long long>(real_dim(f)) * k * k);
        }
}

TEST_CASE("thom summand dimensions grow with the stratum") {
    for (Field f : kFields)
        for (int m = 0; m <= 3; ++m) {
            auto table = thom_dimension_table(f, m, 10);
            REQUIRE(table.size() == 11);
            for (int k = 1; k <= 10; ++k) {
                CHECK(table[k].k == k);
                CHECK(table[k].dim >= table[k - 1].dim);
                if (m >= 1) CHECK(table[k].dim > table[k - 1].dim);
            }
        }
}

TEST_CASE("series primitives agree with direct convolution") {
    Rng rng(157);
    const int deg = 30;
    std::vector<long long> base(deg + 1);
    PowerSeries s(deg);
    for (int i = 0; i <= deg; ++i) {
        base[i] = static_cast<long long>(rng.next_u64() % 10);
        s.set_coeff(i, base[i]);
    }

    PowerSeries plus = s;
    plus.mul_one_plus(7);
    for (int n = 0; n <= deg; ++n) {
        long long want = base[n] + (n >= 7 ? base[n - 7] : 0);
        CHECK(plus.coeff(n) == BigInt(want));
    }

    PowerSeries geo = s;
    geo.mul_inv_one_minus(4);
    for (int n = 0; n <= deg; ++n) {
        long long want = 0;
        for (int j = n % 4; j <= n; j += 4) want += base[j];
        CHECK(geo.coeff(n) == BigInt(want));
    }

    PowerSeries shifted(deg);
    shifted.add_shifted(s, 5);
    CHECK(shifted.coeff(4) == BigInt(0));
    CHECK(shifted.coeff(5) == BigInt(base[0]));
    CHECK(shifted.coeff(deg) == BigInt(base[deg - 5]));

    CHECK_THROWS_AS(s.coeff(deg + 1), DimensionError);
    CHECK_THROWS_AS(PowerSeries(kMaxSeriesDegree + 1), DimensionError);
}

TEST_CASE("low-degree series match pinned values") {
    PowerSeries wc = wedge_poincare(Field::C, 2);
    CHECK(wc.coeff(0) == BigInt(1));
    CHECK(wc.coeff(1) == BigInt(1));
    CHECK(wc.coeff(2) == BigInt(0));

    PowerSeries wh = wedge_poincare(Field::H, 2);
    CHECK(wh.coeff(0) == BigInt(1));
    CHECK(wh.coeff(1) == BigInt(0));
    CHECK(wh.coeff(2) == BigInt(0));

    PowerSeries pr = product_poincare(Field::R, 0);
    CHECK(pr.coeff(0) == BigInt(2));

    for (const PowerSeries& s :
         {wedge_poincare(Field::C, 3), product_poincare(Field::C, 3)}) {
        CHECK(s.coeff(0) == BigInt(1));
        CHECK(s.coeff(1) == BigInt(1));
        CHECK(s.coeff(2) == BigInt(0));
        CHECK(s.coeff(3) == BigInt(1));
    }
}

TEST_CASE("both series match the counting oracles at degree 120") {
    for (Field f : kFields) {
        const int deg = 120;
        PowerSeries w = wedge_poincare(f, deg);
        PowerSeries p = product_poincare(f, deg);
        auto wo = wedge_oracle(f, deg);
        auto po = product_oracle(f, deg);
        for (int n = 0; n <= deg; ++n) {
            CHECK(w.coeff(n) == BigInt(wo[n]));
            CHECK(p.coeff(n) == BigInt(po[n]));
        }
    }
}

TEST_CASE("the two computations agree up to the degree cap") {
    for (Field f : kFields)
        for (int deg : {60, 120, kMaxSeriesDegree}) {
            SeriesComparison cmp = series_compare(f, deg);
            CHECK(cmp.equal);
            CHECK(cmp.first_mismatch == -1);
            CHECK(cmp.wedge == cmp.product);
        }
}

TEST_CASE("intermediate products outgrow 64-bit integers before the cap") {
    // The stratum prefix product over R at the degree cap reaches the
    // count of partitions of 512 into parts of size at most 32, which is
    // past unsigned 64-bit range; pinned from two independent partition
    // recurrences.
    PowerSeries prefix = PowerSeries::one(kMaxSeriesDegree);
    for (int j = 1; j <= 32; ++j) prefix.mul_inv_one_minus(j);
    CHECK(prefix.coeff(kMaxSeriesDegree) == BigInt("82665380088076582359"));
    CHECK(prefix.coeff(kMaxSeriesDegree) > BigInt("18446744073709551615"));
}
