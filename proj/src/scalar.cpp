#include "kstiefel/scalar.hpp"

#include <cmath>

namespace kst {

const char* field_name(Field f) {
    switch (f) {
        case Field::R: return "R";
        case Field::C: return "C";
        case Field::H: return "H";
    }
    return "?";
}

Field field_from_name(const std::string& name) {
    if (name == "R") return Field::R;
    if (name == "C") return Field::C;
    if (name == "H") return Field::H;
    throw ParseError("unknown field '" + name + "', expected R, C or H");
}

Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    return {x.re + y.re, x.i + y.i, x.j + y.j, x.k + y.k};
}

Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {x.re - y.re, x.i - y.i, x.j - y.j, x.k - y.k};
}

Quaternion operator-(const Quaternion& x) {
    return {-x.re, -x.i, -x.j, -x.k};
}

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    // i^2 = j^2 = k^2 = ijk = -1
    return {
        x.re * y.re - x.i * y.i - x.j * y.j - x.k * y.k,
        x.re * y.i + x.i * y.re + x.j * y.k - x.k * y.j,
        x.re * y.j - x.i * y.k + x.j * y.re + x.k * y.i,
        x.re * y.k + x.i * y.j - x.j * y.i + x.k * y.re,
    };
}

Quaternion operator*(double s, const Quaternion& x) {
    return {s * x.re, s * x.i, s * x.j, s * x.k};
}

Quaternion conj(const Quaternion& x) {
    return {x.re, -x.i, -x.j, -x.k};
}

double norm_sq(const Quaternion& x) {
    return x.re * x.re + x.i * x.i + x.j * x.j + x.k * x.k;
}

double abs(const Quaternion& x) { return std::sqrt(norm_sq(x)); }

Quaternion inverse(const Quaternion& x) {
    double n = norm_sq(x);
    if (n == 0.0) throw SingularMatrixError("inverse of zero quaternion");
    return (1.0 / n) * conj(x);
}

double Scalar::component(int idx) const {
    switch (idx) {
        case 0: return re;
        case 1: return i;
        case 2: return j;
        case 3: return k;
    }
    throw DimensionError("scalar component index out of range");
}

void Scalar::set_component(int idx, double v) {
    switch (idx) {
        case 0: re = v; return;
        case 1: i = v; return;
        case 2: j = v; return;
        case 3: k = v; return;
    }
    throw DimensionError("scalar component index out of range");
}

Scalar scalar_zero(Field f) { return Scalar{f, 0, 0, 0, 0}; }

Scalar scalar_one(Field f) { return Scalar{f, 1, 0, 0, 0}; }

Scalar scalar_real(Field f, double x) { return Scalar{f, x, 0, 0, 0}; }

Scalar scalar_complex(double re, double im) {
    return Scalar{Field::C, re, im, 0, 0};
}

Scalar scalar_quat(const Quaternion& q) {
    return Scalar{Field::H, q.re, q.i, q.j, q.k};
}

Quaternion as_quaternion(const Scalar& s) { return {s.re, s.i, s.j, s.k}; }

namespace {

void check_fields(const Scalar& x, const Scalar& y) {
    if (x.field != y.field)
        throw FieldMismatchError(std::string("scalar fields differ: ") +
                                 field_name(x.field) + " vs " +
                                 field_name(y.field));
}

}  // namespace

Scalar operator+(const Scalar& x, const Scalar& y) {
    check_fields(x, y);
    return Scalar{x.field, x.re + y.re, x.i + y.i, x.j + y.j, x.k + y.k};
}

Scalar operator-(const Scalar& x, const Scalar& y) {
    check_fields(x, y);
    return Scalar{x.field, x.re - y.re, x.i - y.i, x.j - y.j, x.k - y.k};
}

Scalar operator-(const Scalar& x) {
    return Scalar{x.field, -x.re, -x.i, -x.j, -x.k};
}

Scalar operator*(const Scalar& x, const Scalar& y) {
    check_fields(x, y);
    switch (x.field) {
        case Field::R:
            return Scalar{Field::R, x.re * y.re, 0, 0, 0};
        case Field::C:
            return Scalar{Field::C, x.re * y.re - x.i * y.i,
                          x.re * y.i + x.i * y.re, 0, 0};
        case Field::H: {
            Quaternion p = as_quaternion(x) * as_quaternion(y);
            return scalar_quat(p);
        }
    }
    throw FieldMismatchError("corrupt field tag");
}

Scalar conj(const Scalar& x) {
    return Scalar{x.field, x.re, -x.i, -x.j, -x.k};
}

double norm_sq(const Scalar& x) {
    return x.re * x.re + x.i * x.i + x.j * x.j + x.k * x.k;
}

double abs(const Scalar& x) { return std::sqrt(norm_sq(x)); }

double real_part(const Scalar& x) { return x.re; }

Scalar inverse(const Scalar& x) {
    double n = norm_sq(x);
    if (n == 0.0) throw SingularMatrixError("inverse of zero scalar");
    double s = 1.0 / n;
    return Scalar{x.field, s * x.re, -s * x.i, -s * x.j, -s * x.k};
}

bool scalar_close(const Scalar& x, const Scalar& y, double tol) {
    if (x.field != y.field) return false;
    return std::abs(x.re - y.re) <= tol && std::abs(x.i - y.i) <= tol &&
           std::abs(x.j - y.j) <= tol && std::abs(x.k - y.k) <= tol;
}

namespace {

// Unit-norm quaternion with the leading significant component positive.
// q and -q define the same inner automorphism.
Quaternion canonical_unit(const Quaternion& q) {
    double n = abs(q);
    if (n < 1e-300)
        throw StructureError("inner automorphism needs a nonzero quaternion");
    Quaternion u = (1.0 / n) * q;
    double comps[4] = {u.re, u.i, u.j, u.k};
    for (double c : comps) {
        if (std::abs(c) > 1e-12) {
            if (c < 0) u = -u;
            break;
        }
    }
    return u;
}

}  // namespace

GaloisElement GaloisElement::identity(Field f) {
    return GaloisElement(f, false, Quaternion{1, 0, 0, 0});
}

GaloisElement GaloisElement::conjugation() {
    return GaloisElement(Field::C, true, Quaternion{1, 0, 0, 0});
}

GaloisElement GaloisElement::inner(const Quaternion& q) {
    return GaloisElement(Field::H, false, canonical_unit(q));
}

Scalar GaloisElement::apply(const Scalar& x) const {
    if (x.field != field_)
        throw FieldMismatchError(
            std::string("automorphism of ") + field_name(field_) +
            " applied to a " + field_name(x.field) + " scalar");
    switch (field_) {
        case Field::R:
            return x;
        case Field::C:
            return conj_ ? conj(x) : x;
        case Field::H: {
            Quaternion r = q_ * as_quaternion(x) * conj(q_);
            return scalar_quat(r);
        }
    }
    throw FieldMismatchError("corrupt field tag");
}

GaloisElement compose(const GaloisElement& s, const GaloisElement& t) {
    if (s.field() != t.field())
        throw FieldMismatchError("composing automorphisms of different fields");
    switch (s.field()) {
        case Field::R:
            return GaloisElement::identity(Field::R);
        case Field::C:
            return (s.is_conjugation() != t.is_conjugation())
                       ? GaloisElement::conjugation()
                       : GaloisElement::identity(Field::C);
        case Field::H:
            return GaloisElement::inner(s.unit() * t.unit());
    }
    throw FieldMismatchError("corrupt field tag");
}

GaloisElement inverse(const GaloisElement& t) {
    if (t.field() == Field::H) return GaloisElement::inner(conj(t.unit()));
    return t;  // R and C elements are involutions
}

bool galois_equal(const GaloisElement& s, const GaloisElement& t) {
    if (s.field() != t.field()) return false;
    switch (s.field()) {
        case Field::R:
            return true;
        case Field::C:
            return s.is_conjugation() == t.is_conjugation();
        case Field::H: {
            Quaternion d = s.unit() - t.unit();
            return std::abs(d.re) <= 1e-12 && std::abs(d.i) <= 1e-12 &&
                   std::abs(d.j) <= 1e-12 && std::abs(d.k) <= 1e-12;
        }
    }
    return false;
}

std::array<double, 16> galois_unit_matrix(const GaloisElement& t) {
    int d = real_dim(t.field());
    std::array<double, 16> m{};
    for (int b = 0; b < d; ++b) {
        Scalar unit = scalar_zero(t.field());
        unit.set_component(b, 1.0);
        Scalar image = t.apply(unit);
        for (int a = 0; a < d; ++a) m[a * d + b] = image.component(a);
    }
    return m;
}

}  // namespace kst
