#include "kstiefel/json_io.hpp"

#include <cmath>
#include <cstdint>

namespace kst {

using nlohmann::json;

namespace {

double finite_number(const json& j, const char* where) {
    if (!j.is_number())
        throw ParseError(std::string(where) + ": expected a number, got " +
                         std::string(j.type_name()));
    double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(std::string(where) + ": non-finite number");
    return v;
}

int small_int(const json& j, const char* where) {
    if (!j.is_number_integer())
        throw ParseError(std::string(where) + ": expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < 0 || v > 1 << 20)
        throw ParseError(std::string(where) + ": integer out of range");
    return static_cast<int>(v);
}

const json& field_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    switch (s.field) {
        case Field::R:
            return json(s.re);
        case Field::C:
            return json::array({s.re, s.i});
        case Field::H:
            return json::array({s.re, s.i, s.j, s.k});
    }
    throw ParseError("corrupt field tag");
}

Scalar scalar_from_json(Field f, const json& j) {
    switch (f) {
        case Field::R:
            return scalar_real(Field::R, finite_number(j, "R scalar"));
        case Field::C: {
            if (!j.is_array() || j.size() != 2)
                throw ParseError("C scalar must be [re, im]");
            return scalar_complex(finite_number(j[0], "C scalar"),
                                  finite_number(j[1], "C scalar"));
        }
        case Field::H: {
            if (!j.is_array() || j.size() != 4)
                throw ParseError("H scalar must be [re, i, j, k]");
            return scalar_quat({finite_number(j[0], "H scalar"),
                                finite_number(j[1], "H scalar"),
                                finite_number(j[2], "H scalar"),
                                finite_number(j[3], "H scalar")});
        }
    }
    throw ParseError("corrupt field tag");
}

json matrix_to_json(const KMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(scalar_to_json(m.at(r, c)));
        entries.push_back(std::move(row));
    }
    return json{{"field", field_name(m.field())},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", std::move(entries)}};
}

KMatrix matrix_from_json(const json& j) {
    const json& fn = field_of(j, "field");
    if (!fn.is_string()) throw ParseError("matrix field must be a string");
    Field f = field_from_name(fn.get<std::string>());
    int rows = small_int(field_of(j, "rows"), "rows");
    int cols = small_int(field_of(j, "cols"), "cols");
    const json& entries = field_of(j, "entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
        throw ParseError("matrix entries must hold 'rows' rows");
    KMatrix m(f, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = entries[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix row " + std::to_string(r) +
                             " must hold 'cols' entries");
        for (int c = 0; c < cols; ++c)
            m.set(r, c, scalar_from_json(f, row[c]));
    }
    return m;
}

json stiefel_to_json(const StiefelPoint& p) {
    return json{{"n", p.n()}, {"m", p.m()}, {"f", matrix_to_json(p.f())}};
}

StiefelPoint stiefel_from_json(const json& j, const Tolerance& tol) {
    int n = small_int(field_of(j, "n"), "n");
    int m = small_int(field_of(j, "m"), "m");
    return StiefelPoint(matrix_from_json(field_of(j, "f")), n, m, tol);
}

json cayley_to_json(const CayleyCoords& c) {
    return json{{"Y", matrix_to_json(c.y)}, {"X", matrix_to_json(c.x)}};
}

CayleyCoords cayley_from_json(const json& j) {
    return {matrix_from_json(field_of(j, "Y")),
            matrix_from_json(field_of(j, "X"))};
}

json stratum_to_json(const StratumCoords& s) {
    return json{{"psi", matrix_to_json(s.psi)},
                {"Y", matrix_to_json(s.coords.y)},
                {"X", matrix_to_json(s.coords.x)}};
}

StratumCoords stratum_from_json(const json& j) {
    return {matrix_from_json(field_of(j, "psi")),
            {matrix_from_json(field_of(j, "Y")),
             matrix_from_json(field_of(j, "X"))}};
}

json series_to_json(const SeriesComparison& cmp) {
    // Coefficients are emitted as decimal strings: they are exact
    // integers that can exceed what a JSON double represents.
    json wedge = json::array(), product = json::array();
    for (int i = 0; i <= cmp.degree; ++i) {
        wedge.push_back(cmp.wedge.coeff(i).str());
        product.push_back(cmp.product.coeff(i).str());
    }
    json out{{"field", field_name(cmp.field)},
             {"degree", cmp.degree},
             {"equal", cmp.equal},
             {"wedge", std::move(wedge)},
             {"product", std::move(product)}};
    if (cmp.equal)
        out["first_mismatch"] = nullptr;
    else
        out["first_mismatch"] = cmp.first_mismatch;
    return out;
}

std::string digest_json(const json& j) {
    std::string dump = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace kst
