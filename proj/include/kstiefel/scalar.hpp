#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "kstiefel/errors.hpp"

namespace kst {

// The three associative real division algebras.
enum class Field : std::uint8_t { R, C, H };

constexpr int real_dim(Field f) {
    return f == Field::R ? 1 : (f == Field::C ? 2 : 4);
}

const char* field_name(Field f);
Field field_from_name(const std::string& name);  // "R" | "C" | "H"

// Hamilton quaternion, components along 1, i, j, k.
struct Quaternion {
    double re = 0.0;
    double i = 0.0;
    double j = 0.0;
    double k = 0.0;
};

Quaternion operator+(const Quaternion& x, const Quaternion& y);
Quaternion operator-(const Quaternion& x, const Quaternion& y);
Quaternion operator-(const Quaternion& x);
Quaternion operator*(const Quaternion& x, const Quaternion& y);
Quaternion operator*(double s, const Quaternion& x);
Quaternion conj(const Quaternion& x);
double norm_sq(const Quaternion& x);
double abs(const Quaternion& x);
Quaternion inverse(const Quaternion& x);

// Element of R, C, or H.  All four components are stored; the field tag
// decides which participate in arithmetic (R uses re, C uses re and i).
// Mixing tags raises FieldMismatchError.
struct Scalar {
    Field field = Field::R;
    double re = 0.0;
    double i = 0.0;
    double j = 0.0;
    double k = 0.0;

    double component(int idx) const;  // idx in [0, real_dim(field))
    void set_component(int idx, double v);
};

Scalar scalar_zero(Field f);
Scalar scalar_one(Field f);
Scalar scalar_real(Field f, double x);            // x * 1 inside f
Scalar scalar_complex(double re, double im);      // field C
Scalar scalar_quat(const Quaternion& q);          // field H
Quaternion as_quaternion(const Scalar& s);

Scalar operator+(const Scalar& x, const Scalar& y);
Scalar operator-(const Scalar& x, const Scalar& y);
Scalar operator-(const Scalar& x);
Scalar operator*(const Scalar& x, const Scalar& y);
Scalar conj(const Scalar& x);
double norm_sq(const Scalar& x);
double abs(const Scalar& x);
double real_part(const Scalar& x);
Scalar inverse(const Scalar& x);  // SingularMatrixError on (near) zero
bool scalar_close(const Scalar& x, const Scalar& y, double tol);

// Galois group element of the field extension over R.
//
//   R: trivial group.
//   C: {identity, complex conjugation}.
//   H: inner automorphisms a |-> q a q^{-1} for unit q; q and -q act
//      identically, so units are stored with the first component of
//      magnitude above 1e-12 made positive.
class GaloisElement {
  public:
    static GaloisElement identity(Field f);
    static GaloisElement conjugation();                // field C
    static GaloisElement inner(const Quaternion& q);   // field H, q != 0

    Field field() const { return field_; }
    bool is_conjugation() const { return conj_; }
    const Quaternion& unit() const { return q_; }

    Scalar apply(const Scalar& x) const;

  private:
    GaloisElement(Field f, bool c, const Quaternion& q)
        : field_(f), conj_(c), q_(q) {}

    Field field_ = Field::R;
    bool conj_ = false;           // meaningful for C
    Quaternion q_{1, 0, 0, 0};    // meaningful for H; unit, sign-canonical
};

GaloisElement compose(const GaloisElement& s, const GaloisElement& t);
GaloisElement inverse(const GaloisElement& t);
// Equality of automorphisms: canonical representatives agree within 1e-12.
bool galois_equal(const GaloisElement& s, const GaloisElement& t);

// Matrix of t acting on the real coordinates (1, i, ...) of the field,
// row-major d x d with d = real_dim.  Column b holds the coordinates of
// t applied to the b-th unit.
std::array<double, 16> galois_unit_matrix(const GaloisElement& t);

}  // namespace kst
