#include <doctest.h>

#include <random>

#include "schur/expr.hpp"

using namespace schur;

namespace {

SchurExprPtr random_expr(std::mt19937_64& rng, unsigned max_degree, unsigned depth) {
    std::uniform_int_distribution<int> kind(0, depth == 0 ? 0 : 3);
    std::uniform_int_distribution<unsigned> power(1, 3);
    for (int attempt = 0; attempt < 20; ++attempt) {
        SchurExprPtr e;
        switch (kind(rng)) {
            case 0: e = base(); break;
            case 1: e = sym(power(rng), random_expr(rng, max_degree, depth - 1)); break;
            case 2: e = wedge(power(rng), random_expr(rng, max_degree, depth - 1)); break;
            default: {
                std::vector<SchurExprPtr> kids;
                std::uniform_int_distribution<int> count(2, 3);
                for (int i = count(rng); i > 0; --i)
                    kids.push_back(random_expr(rng, max_degree, depth - 1));
                e = tensor(std::move(kids));
                break;
            }
        }
        if (degree_of(*e) <= max_degree) return e;
    }
    return base();
}

std::vector<std::string> label_strings(const SchurExpr& e, unsigned n) {
    std::vector<std::string> out;
    for (const auto& l : enumerate_basis(e, n)) out.push_back(l.to_string());
    return out;
}

}  // namespace

TEST_CASE("parsing produces the expected shapes") {
    auto e = parse_schur_expr("S^2(W^2(M))");
    CHECK(e->kind() == ExprKind::sym);
    CHECK(e->power() == 2);
    CHECK(e->child()->kind() == ExprKind::wedge);
    CHECK(degree_of(*e) == 4);

    auto t = parse_schur_expr("T^3(M)");
    CHECK(t->kind() == ExprKind::tensor);
    CHECK(t->children().size() == 3);
    CHECK(*t == *parse_schur_expr("M (x) M (x) M"));
    CHECK(*parse_schur_expr("T^1(M)") == *base());
    CHECK(*parse_schur_expr("M^(x)1") == *base());
    CHECK(*parse_schur_expr("M^(x)3") == *t);

    // Nested products stay nested.
    auto nested = parse_schur_expr("(M (x) M) (x) M");
    CHECK(nested->children().size() == 2);
    CHECK(nested->children()[0]->kind() == ExprKind::tensor);
    CHECK(*nested != *t);

    auto big = parse_schur_expr("S^2(S^3(M) (x) W^2(M))^(x)2");
    CHECK(big->kind() == ExprKind::tensor);
    CHECK(big->children().size() == 2);
    CHECK(*big->children()[0] == *big->children()[1]);
    CHECK(degree_of(*big) == 20);

    auto sum = parse_schur_expr("M (+) W^2(M) (+) S^2(M)");
    CHECK(sum->kind() == ExprKind::direct_sum);
    CHECK(sum->children().size() == 3);
    CHECK(degrees_of(*sum) == std::vector<unsigned>{1, 2, 2});
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_schur_expr("S^0(M)"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("M^(x)0"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("S^2(M"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("N"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("M M"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr(""), ParseError);

    try {
        parse_schur_expr("S^2(M (+) M)");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(parse_schur_expr("(M (+) M) (x) M"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("(M (+) M)^(x)2"), ParseError);
    CHECK_THROWS_AS(parse_schur_expr("M (+) (M (+) M)"), ParseError);
    // A parenthesized sum that ends up as the root is fine.
    CHECK(parse_schur_expr("(M (+) M)")->kind() == ExprKind::direct_sum);
}

TEST_CASE("degree and rank") {
    CHECK(degree_of(*base()) == 1);
    CHECK(degree_of(*parse_schur_expr("S^3(M)")) == 3);
    CHECK(degree_of(*parse_schur_expr("S^2(S^3(M) (x) W^2(M))")) == 10);
    CHECK_THROWS_AS(degree_of(*parse_schur_expr("M (+) M")), std::invalid_argument);

    CHECK(rank_of(*base(), 7) == 7);
    CHECK(rank_of(*parse_schur_expr("S^2(M)"), 2) == 3);
    CHECK(rank_of(*parse_schur_expr("S^3(M)"), 2) == 4);
    CHECK(rank_of(*parse_schur_expr("W^2(M)"), 4) == 6);
    CHECK(rank_of(*parse_schur_expr("S^2(W^2(M))"), 4) == 21);
    CHECK(rank_of(*parse_schur_expr("W^4(M)"), 3) == 0);
    CHECK(rank_of(*parse_schur_expr("W^4(M)"), 4) == 1);
    CHECK(rank_of(*parse_schur_expr("S^2(S^2(M))"), 3) == 21);
    CHECK(rank_of(*parse_schur_expr("T^2(M)"), 3) == 9);
    CHECK(rank_of(*parse_schur_expr("M (+) W^2(M)"), 3) == 6);
    CHECK(rank_of(*parse_schur_expr("S^2(S^3(M) (x) W^2(M))^(x)2"), 2) == 100);

    CHECK(binomial_checked(4, 2) == 6);
    CHECK(binomial_checked(79, 2) == 3081);
    CHECK(binomial_checked(3, 5) == 0);
    CHECK_THROWS_AS(binomial_checked(10000, 5000), std::overflow_error);
}

TEST_CASE("basis enumeration") {
    CHECK(label_strings(*parse_schur_expr("S^2(M)"), 2) ==
          std::vector<std::string>{"S[1,1]", "S[1,2]", "S[2,2]"});
    CHECK(label_strings(*parse_schur_expr("W^2(M)"), 3) ==
          std::vector<std::string>{"W[1,2]", "W[1,3]", "W[2,3]"});
    CHECK(label_strings(*parse_schur_expr("T^2(M)"), 2) ==
          std::vector<std::string>{"T[1,1]", "T[1,2]", "T[2,1]", "T[2,2]"});
    CHECK(label_strings(*parse_schur_expr("S^2(W^2(M))"), 3) ==
          std::vector<std::string>{"S[W[1,2],W[1,2]]", "S[W[1,2],W[1,3]]", "S[W[1,2],W[2,3]]",
                                   "S[W[1,3],W[1,3]]", "S[W[1,3],W[2,3]]", "S[W[2,3],W[2,3]]"});
    CHECK(label_strings(*parse_schur_expr("W^3(M)"), 2).empty());
    CHECK(label_strings(*parse_schur_expr("S^1(M)"), 2) == std::vector<std::string>{"S[1]", "S[2]"});

    auto mixed = enumerate_basis(*parse_schur_expr("W^2(M) (x) M"), 2);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].to_string() == "T[W[1,2],1]");
    std::vector<unsigned> leaves;
    mixed[1].collect_leaves(leaves);
    CHECK(leaves == std::vector<unsigned>{1, 2, 2});

    CHECK_THROWS_AS(enumerate_basis(*parse_schur_expr("M (+) M"), 2), std::invalid_argument);
}

TEST_CASE("enumeration is sorted and matches rank") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto e = random_expr(rng, 6, 3);
        for (unsigned n = 1; n <= 3; ++n) {
            auto basis = enumerate_basis(*e, n);
            CHECK(basis.size() == rank_of(*e, n));
            CHECK(std::is_sorted(basis.begin(), basis.end()));
            CHECK(std::adjacent_find(basis.begin(), basis.end()) == basis.end());
            for (const auto& l : basis) {
                std::vector<unsigned> leaves;
                l.collect_leaves(leaves);
                CHECK(leaves.size() == degree_of(*e));
            }
        }
    }
}

TEST_CASE("format and parse round trip") {
    for (const char* text : {"M", "S^3(M)", "W^2(S^2(M))", "M (x) M (x) M", "(M (x) M) (x) M",
                             "S^2(S^3(M) (x) W^2(M))", "M (+) W^2(M)", "S^1(M) (x) W^1(M)"}) {
        auto e = parse_schur_expr(text);
        CHECK(*parse_schur_expr(format_expr(e)) == *e);
    }
    CHECK(format_expr(parse_schur_expr("  S^2( M (x) M )  ")) == "S^2(M (x) M)");
    CHECK(format_expr(parse_schur_expr("T^2(W^2(M))")) == "W^2(M) (x) W^2(M)");
    CHECK(format_expr(parse_schur_expr("(M(x)M)^(x)2")) == "(M (x) M) (x) (M (x) M)");

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 80; ++trial) {
        auto e = random_expr(rng, 8, 3);
        CHECK(*parse_schur_expr(format_expr(e)) == *e);
    }
}
