#include "kstiefel/splitting.hpp"

#include <cmath>
#include <string>

namespace kst {

HomDecomposition hom_decompose(const KMatrix& m) {
    const int k = m.cols();
    if (m.rows() < k)
        throw DimensionError("hom_decompose expects at least k rows");
    auto [x, z] = skew_self_split(sub_block(m, 0, 0, k, k));
    return {sub_block(m, k, 0, m.rows() - k, k), x, z};
}

KMatrix hom_assemble(const HomDecomposition& d) {
    return vstack(add(d.x, d.z), d.y);
}

PolarCollapse collapse_polar(const KMatrix& m, const Tolerance& tol) {
    if (m.rows() < m.cols()) return Basepoint{};
    RankInfo info = rank_info(m, tol);
    if (info.ambiguous())
        throw RankAmbiguityError(
            "collapse_polar: rank decision straddles the threshold");
    if (info.rank < m.cols()) return Basepoint{};
    return polar_factor(m, tol);
}

CayleyCollapse collapse_cayley(const StiefelPoint& p, const Tolerance& tol) {
    RankInfo info = filtration_rank_info(p, tol);
    if (info.ambiguous())
        throw RankAmbiguityError(
            "collapse_cayley: level decision straddles the threshold");
    if (info.rank < p.n()) return Basepoint{};
    return cayley_inverse(p, tol);
}

KMatrix composite_embedding(const HomDecomposition& d, const Tolerance& tol) {
    StiefelPoint c = cayley(CayleyCoords{d.y, d.x}, tol);
    KMatrix stretch = exp_selfadjoint(real_scale(-1.0, d.z), tol);
    return matmul(c.f(), stretch);
}

int hom_param_dim(Field f, int k, int m) {
    int d = real_dim(f);
    return d * (k * k + k * m);
}

std::vector<double> pack_hom(const HomDecomposition& d) {
    const Field f = d.x.field();
    const int dd = real_dim(f);
    const int k = d.x.rows();
    const int m = d.y.rows();
    std::vector<double> out;
    out.reserve(hom_param_dim(f, k, m));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < k; ++c)
            for (int t = 0; t < dd; ++t)
                out.push_back(d.y.at(r, c).component(t));
    for (int p = 0; p < k; ++p) {
        for (int t = 1; t < dd; ++t) out.push_back(d.x.at(p, p).component(t));
        for (int q = p + 1; q < k; ++q)
            for (int t = 0; t < dd; ++t)
                out.push_back(d.x.at(p, q).component(t));
    }
    for (int p = 0; p < k; ++p) {
        out.push_back(d.z.at(p, p).re);
        for (int q = p + 1; q < k; ++q)
            for (int t = 0; t < dd; ++t)
                out.push_back(d.z.at(p, q).component(t));
    }
    return out;
}

HomDecomposition unpack_hom(Field f, int k, int m,
                            const std::vector<double>& v) {
    const int dd = real_dim(f);
    if (static_cast<int>(v.size()) != hom_param_dim(f, k, m))
        throw DimensionError("unpack_hom: coordinate vector has size " +
                             std::to_string(v.size()) + ", expected " +
                             std::to_string(hom_param_dim(f, k, m)));
    HomDecomposition d{KMatrix(f, m, k), KMatrix(f, k, k), KMatrix(f, k, k)};
    std::size_t at = 0;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < k; ++c) {
            Scalar s = scalar_zero(f);
            for (int t = 0; t < dd; ++t) s.set_component(t, v[at++]);
            d.y.set(r, c, s);
        }
    for (int p = 0; p < k; ++p) {
        Scalar diag = scalar_zero(f);
        for (int t = 1; t < dd; ++t) diag.set_component(t, v[at++]);
        d.x.set(p, p, diag);
        for (int q = p + 1; q < k; ++q) {
            Scalar s = scalar_zero(f);
            for (int t = 0; t < dd; ++t) s.set_component(t, v[at++]);
            d.x.set(p, q, s);
            d.x.set(q, p, -conj(s));
        }
    }
    for (int p = 0; p < k; ++p) {
        Scalar diag = scalar_real(f, v[at++]);
        d.z.set(p, p, diag);
        for (int q = p + 1; q < k; ++q) {
            Scalar s = scalar_zero(f);
            for (int t = 0; t < dd; ++t) s.set_component(t, v[at++]);
            d.z.set(p, q, s);
            d.z.set(q, p, conj(s));
        }
    }
    return d;
}

double jacobian_origin_deviation(Field f, int k, int m, double step,
                                 const Tolerance& tol) {
    const int dim = hom_param_dim(f, k, m);
    double worst = 0.0;
    std::vector<double> v(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        v[i] = step;
        std::vector<double> plus =
            pack_hom(hom_decompose(composite_embedding(
                unpack_hom(f, k, m, v), tol)));
        v[i] = -step;
        std::vector<double> minus =
            pack_hom(hom_decompose(composite_embedding(
                unpack_hom(f, k, m, v), tol)));
        v[i] = 0.0;
        for (int r = 0; r < dim; ++r) {
            double deriv = (plus[r] - minus[r]) / (2.0 * step);
            double want = (r == i) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(deriv - want));
        }
    }
    return worst;
}

}  // namespace kst
