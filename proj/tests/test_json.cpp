#include <doctest.h>

#include <cctype>
#include <limits>
#include <string>

#include "kstiefel/json_io.hpp"

using namespace kst;
using nlohmann::json;

namespace {

const Field kFields[] = {Field::R, Field::C, Field::H};

}  // namespace

TEST_CASE("scalar wire format round trips per field") {
    Scalar r = scalar_real(Field::R, -2.5);
    CHECK(scalar_to_json(r).is_number());
    CHECK(scalar_close(scalar_from_json(Field::R, scalar_to_json(r)), r, 0.0));

    Scalar c = scalar_complex(1.0, -3.0);
    CHECK(scalar_to_json(c) == json::array({1.0, -3.0}));
    CHECK(scalar_close(scalar_from_json(Field::C, scalar_to_json(c)), c, 0.0));

    Scalar q = scalar_quat({0.5, -1.0, 2.0, 4.0});
    CHECK(scalar_to_json(q) == json::array({0.5, -1.0, 2.0, 4.0}));
    CHECK(scalar_close(scalar_from_json(Field::H, scalar_to_json(q)), q, 0.0));
}

TEST_CASE("scalar parsing rejects wrong arity and non-finite values") {
    CHECK_THROWS_AS(scalar_from_json(Field::C, json::array({1.0})),
                    ParseError);
    CHECK_THROWS_AS(scalar_from_json(Field::H, json::array({1.0, 2.0})),
                    ParseError);
    CHECK_THROWS_AS(scalar_from_json(Field::R, json::array({1.0, 0.0})),
                    ParseError);
    CHECK_THROWS_AS(scalar_from_json(Field::R, json("oops")), ParseError);

    json inf = json::array(
        {std::numeric_limits<double>::infinity(), 0.0});
    // json stores infinity as null on dump, but direct construction keeps
    // the value; the parser must refuse it either way.
    CHECK_THROWS_AS(scalar_from_json(Field::C, inf), ParseError);
}

TEST_CASE("matrix wire format round trips with field tag and shape") {
    Rng rng(163);
    for (Field f : kFields) {
        KMatrix m = random_matrix(rng, f, 3, 2);
        json j = matrix_to_json(m);
        CHECK(j.at("field") == field_name(f));
        CHECK(j.at("rows") == 3);
        CHECK(j.at("cols") == 2);
        KMatrix back = matrix_from_json(j);
        CHECK(max_abs(sub(back, m)) == 0.0);
    }
}

TEST_CASE("matrix parsing rejects malformed payloads") {
    json good = matrix_to_json(KMatrix::identity(Field::C, 2));

    json bad_field = good;
    bad_field["field"] = "O";
    CHECK_THROWS_AS(matrix_from_json(bad_field), ParseError);

    json ragged = good;
    ragged["entries"][0].erase(1);
    CHECK_THROWS_AS(matrix_from_json(ragged), ParseError);

    json short_rows = good;
    short_rows["rows"] = 3;
    CHECK_THROWS_AS(matrix_from_json(short_rows), ParseError);

    CHECK_THROWS_AS(matrix_from_json(json::array()), ParseError);
}

TEST_CASE("stiefel, cayley, and stratum payloads round trip") {
    Rng rng(167);
    for (Field f : kFields) {
        CayleyCoords c{random_matrix(rng, f, 2, 3), random_skew(rng, f, 3)};
        json cj = cayley_to_json(c);
        CayleyCoords cback = cayley_from_json(cj);
        CHECK(max_abs(sub(cback.y, c.y)) == 0.0);
        CHECK(max_abs(sub(cback.x, c.x)) == 0.0);

        StiefelPoint p = cayley(c);
        StiefelPoint pback = stiefel_from_json(stiefel_to_json(p));
        CHECK(pback.n() == p.n());
        CHECK(pback.m() == p.m());
        CHECK(max_abs(sub(pback.f(), p.f())) == 0.0);

        StratumCoords s{random_isometry(rng, f, 5, 3), c};
        StratumCoords sback = stratum_from_json(stratum_to_json(s));
        CHECK(max_abs(sub(sback.psi, s.psi)) == 0.0);
        CHECK(max_abs(sub(sback.coords.x, s.coords.x)) == 0.0);
    }
}

TEST_CASE("stiefel parsing enforces the isometry invariant") {
    StiefelPoint p(base_inclusion(Field::R, 2, 1), 2, 1);
    json j = stiefel_to_json(p);
    j["f"]["entries"][0][0] = 2.0;
    CHECK_THROWS_AS(stiefel_from_json(j), StructureError);

    json mixed = stiefel_to_json(p);
    mixed.erase("m");
    CHECK_THROWS_AS(stiefel_from_json(mixed), ParseError);
}

TEST_CASE("series payload carries exact coefficients as strings") {
    SeriesComparison cmp = series_compare(Field::H, 16);
    json j = series_to_json(cmp);
    CHECK(j.at("field") == "H");
    CHECK(j.at("degree") == 16);
    CHECK(j.at("equal") == true);
    CHECK(j.at("first_mismatch").is_null());
    REQUIRE(j.at("wedge").size() == 17);
    CHECK(j.at("wedge")[0] == "1");
    CHECK(j.at("wedge")[3] == "1");
    for (int i = 0; i <= 16; ++i)
        CHECK(j.at("wedge")[i] == cmp.wedge.coeff(i).str());
}

TEST_CASE("digest is stable, hex-shaped, and input-sensitive") {
    json a = matrix_to_json(KMatrix::identity(Field::H, 3));
    std::string d1 = digest_json(a);
    std::string d2 = digest_json(a);
    CHECK(d1 == d2);
    CHECK(d1.size() == 16);
    for (char ch : d1)
        CHECK((std::isdigit(static_cast<unsigned char>(ch)) ||
               (ch >= 'a' && ch <= 'f')));

    json b = matrix_to_json(KMatrix::identity(Field::H, 4));
    CHECK(digest_json(b) != d1);
}
