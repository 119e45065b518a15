#include <doctest.h>

#include <random>

#include "schur/matrix.hpp"

using namespace schur;

namespace {

// Cofactor expansion along the first row; independent of the Bareiss path.
RingElement cofactor_det(const ExactMatrix& m) {
    const size_t n = m.rows();
    if (n == 0) return RingElement::one(m.spec());
    if (n == 1) return m.at(0, 0);
    RingElement acc = RingElement::zero(m.spec());
    for (size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        ExactMatrix minor(m.spec(), n - 1, n - 1);
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        RingElement term = m.at(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

ExactMatrix random_matrix(const RingSpecPtr& spec, size_t n, std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    ExactMatrix m(spec, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = RingElement::from_int(spec, dist(rng));
    return m;
}

}  // namespace

TEST_CASE("matmul against naive accumulation") {
    auto Z = RingSpec::integers();
    auto a = matrix_from_strings(Z, {{"1", "2", "0"}, {"-1", "0", "3"}});
    auto b = matrix_from_strings(Z, {{"2", "1"}, {"0", "4"}, {"5", "-2"}});
    auto c = matmul(a, b);
    CHECK(c == matrix_from_strings(Z, {{"2", "9"}, {"13", "-7"}}));
    CHECK_THROWS_AS(matmul(c, b), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_matrix(Z, 4, rng, 9);
        auto y = random_matrix(Z, 4, rng, 9);
        ExactMatrix naive(Z, 4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                for (size_t k = 0; k < 4; ++k) naive.at(i, j) += x.at(i, k) * y.at(k, j);
        CHECK(matmul(x, y) == naive);
    }
}

TEST_CASE("determinant matches cofactor expansion") {
    std::mt19937_64 rng(5);
    auto Z = RingSpec::integers();
    auto Q = RingSpec::rationals();
    for (size_t n = 0; n <= 5; ++n)
        for (int trial = 0; trial < 8; ++trial) {
            auto m = random_matrix(Z, n, rng, 6);
            CHECK(determinant(m) == cofactor_det(m));
            auto mq = convert(m, Q);
            CHECK(determinant(mq) == cofactor_det(mq));
        }
    // Singular with a leading zero column forces the pivot-search path.
    auto s = matrix_from_strings(Z, {{"0", "1", "2"}, {"0", "3", "4"}, {"0", "5", "6"}});
    CHECK(determinant(s).is_zero());
    auto p = matrix_from_strings(Z, {{"0", "1"}, {"1", "0"}});
    CHECK(determinant(p) == RingElement::from_int(Z, -1));
}

TEST_CASE("determinant of the degree three display matrix") {
    auto P = RingSpec::polynomials({"a", "b", "c", "d"});
    auto m = matrix_from_strings(
        P, {{"a^3", "3*a^2*b", "3*a*b^2", "b^3"},
            {"a^2*c", "a^2*d + 2*a*b*c", "b^2*c + 2*a*b*d", "b^2*d"},
            {"a*c^2", "b*c^2 + 2*a*c*d", "a*d^2 + 2*b*c*d", "b*d^2"},
            {"c^3", "3*c^2*d", "3*c*d^2", "d^3"}});
    auto det = parse_scalar("a*d - b*c", P).pow(6);
    CHECK(determinant(m) == det);
    CHECK(determinant(m) == cofactor_det(m));
}

TEST_CASE("determinant over localized integers divides exactly") {
    auto L = RingSpec::localized_integers({3});
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> dist(-6, 6);
    std::uniform_int_distribution<int> power(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        ExactMatrix m(L, 4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                mpq_class q(dist(rng));
                for (int p = power(rng); p > 0; --p) q /= 3;
                m.at(i, j) = RingElement::from_mpq(L, q);
            }
        CHECK(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("rational kernel basis") {
    auto Z = RingSpec::integers();
    auto Q = RingSpec::rationals();
    auto m = matrix_from_strings(Z, {{"1", "0", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "0", "1"}});
    auto basis = rational_kernel_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == RingElement::from_int(Q, 0));
    CHECK(basis[0][1] == RingElement::from_int(Q, -1));
    CHECK(basis[0][2] == RingElement::from_int(Q, 1));
    CHECK(basis[0][3] == RingElement::from_int(Q, 0));
    CHECK(rational_rank(m) == 3);

    // Primitive: [[2,4]] has kernel (-2,1), not (-4,2).
    auto k2 = rational_kernel_basis(matrix_from_strings(Z, {{"2", "4"}}));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0][0] == RingElement::from_int(Q, -2));
    CHECK(k2[0][1] == RingElement::from_int(Q, 1));

    CHECK(rational_kernel_basis(ExactMatrix::identity(Z, 3)).empty());

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(Z, 4, rng, 4);
        auto aq = convert(a, Q);
        for (const auto& v : rational_kernel_basis(a)) {
            ExactMatrix col(Q, 4, 1);
            for (size_t i = 0; i < 4; ++i) col.at(i, 0) = v[i];
            CHECK(is_zero_matrix(matmul(aq, col)));
        }
        CHECK(rational_rank(a) + rational_kernel_basis(a).size() == 4);
    }
}

TEST_CASE("smith elementary divisors") {
    auto Z = RingSpec::integers();
    CHECK(smith_elementary_divisors(matrix_from_strings(Z, {{"2", "0"}, {"0", "6"}})) ==
          std::vector<mpz_class>{2, 6});
    CHECK(smith_elementary_divisors(matrix_from_strings(Z, {{"6", "0"}, {"0", "2"}})) ==
          std::vector<mpz_class>{2, 6});
    CHECK(smith_elementary_divisors(matrix_from_strings(Z, {{"0"}})).empty());
    CHECK(smith_elementary_divisors(matrix_from_strings(Z, {{"2", "4"}, {"6", "8"}})) ==
          std::vector<mpz_class>{2, 4});
    CHECK(smith_elementary_divisors(ExactMatrix::identity(Z, 3)) == std::vector<mpz_class>{1, 1, 1});
    // Divisor product equals |det| and each divides the next.
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(Z, 4, rng, 5);
        auto divs = smith_elementary_divisors(a);
        mpz_class prod = 1;
        for (size_t i = 0; i < divs.size(); ++i) {
            prod *= divs[i];
            if (i) CHECK(divs[i] % divs[i - 1] == 0);
        }
        auto det = determinant(a).integer_value();
        if (det != 0) {
            CHECK(divs.size() == 4);
            CHECK(prod == abs(det));
        } else {
            CHECK(divs.size() == rational_rank(a));
        }
    }
}

TEST_CASE("scalar multiple of identity") {
    auto Z = RingSpec::integers();
    auto three = RingElement::from_int(Z, 3);
    CHECK(scalar_multiple_of_identity(scale(three, ExactMatrix::identity(Z, 6))) == three);
    CHECK(!scalar_multiple_of_identity(matrix_from_strings(Z, {{"3", "1"}, {"0", "3"}})));
    CHECK(!scalar_multiple_of_identity(matrix_from_strings(Z, {{"3", "0"}, {"0", "2"}})));
    CHECK(!scalar_multiple_of_identity(ExactMatrix(Z, 2, 3)));
    CHECK(scalar_multiple_of_identity(ExactMatrix(Z, 0, 0)) == RingElement::one(Z));
}

TEST_CASE("rational inverse") {
    auto Z = RingSpec::integers();
    auto Q = RingSpec::rationals();
    auto a = matrix_from_strings(Z, {{"2", "1"}, {"1", "1"}});
    auto inv = rational_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(matmul(convert(a, Q), *inv) == ExactMatrix::identity(Q, 2));
    CHECK(!rational_inverse(matrix_from_strings(Z, {{"1", "2"}, {"2", "4"}})));

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_matrix(Z, 4, rng, 6);
        auto mi = rational_inverse(m);
        if (determinant(m).is_zero()) {
            CHECK(!mi);
        } else {
            REQUIRE(mi.has_value());
            CHECK(matmul(*mi, convert(m, Q)) == ExactMatrix::identity(Q, 4));
        }
    }
}

TEST_CASE("columns in span") {
    auto Z = RingSpec::integers();
    auto a = matrix_from_strings(Z, {{"1", "0"}, {"0", "1"}, {"0", "0"}});
    auto inside = matrix_from_strings(Z, {{"3"}, {"-2"}, {"0"}});
    auto outside = matrix_from_strings(Z, {{"0"}, {"0"}, {"1"}});
    CHECK(columns_in_span(a, inside));
    CHECK(!columns_in_span(a, outside));
}

TEST_CASE("matrix json round trip") {
    auto L = RingSpec::localized_integers({3});
    auto m = matrix_from_strings(L, {{"1/3", "2"}, {"0", "-5/9"}});
    m.row_labels = {"r0", "r1"};
    m.col_labels = {"c0", "c1"};
    auto j = matrix_to_json(m);
    CHECK(j["ring"] == "Z[1/3]");
    auto back = matrix_from_json(j);
    CHECK(back == m);
    CHECK(back.row_labels == m.row_labels);
    CHECK(matrix_to_json(back).dump() == j.dump());
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"rows":1})")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(
                        R"({"ring":"Z","rows":1,"cols":2,"entries":[["1"]]})")),
                    std::invalid_argument);
}

TEST_CASE("stacking") {
    auto Z = RingSpec::integers();
    auto a = matrix_from_strings(Z, {{"1", "2"}});
    auto b = matrix_from_strings(Z, {{"3", "4"}});
    CHECK(vstack(a, b) == matrix_from_strings(Z, {{"1", "2"}, {"3", "4"}}));
    CHECK(hstack(transpose(a), transpose(b)) == matrix_from_strings(Z, {{"1", "3"}, {"2", "4"}}));
    CHECK(sub(add(a, b), b) == a);
    CHECK(negate(a) == scale(RingElement::from_int(Z, -1), a));
}
