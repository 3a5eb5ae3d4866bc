#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qlg/rational.hpp"

using namespace qlg;

TEST_CASE("rational text round-trip on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 99991);
    for (int i = 0; i < 500; ++i) {
        Rat r(num(rng), den(rng));
        r.canonicalize();
        CHECK(parse_rat(to_string(r)) == r);
    }
    CHECK(to_string(Rat(-3, 6)) == "-1/2");
    CHECK(parse_rat("4/8") == Rat(1, 2));
    CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}

TEST_CASE("deterministic primality") {
    CHECK(is_prime(Int(769)));
    CHECK_FALSE(is_prime(Int(1)));
    CHECK_FALSE(is_prime(Int(4369))); // 17 * 257
    CHECK(is_prime(Int(2)));
    CHECK_FALSE(is_prime(Int(0)));
    CHECK_FALSE(is_prime(Int(-7)));
    // strong pseudoprime to several small bases
    CHECK_FALSE(is_prime_u64(3215031751ull));
    CHECK(is_prime_u64(18446744073709551557ull)); // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(18446744073709551615ull));
}

TEST_CASE("factor: small composites and rho cofactors") {
    auto f = factor(Int(4369));
    REQUIRE(f.size() == 2);
    CHECK(f[Int(17)] == 1);
    CHECK(f[Int(257)] == 1);

    f = factor(Int(-1513));
    CHECK(f[Int(17)] == 1);
    CHECK(f[Int(89)] == 1);

    // two primes beyond the trial-division bound
    Int big = Int("1000003") * Int("1000033");
    f = factor(big);
    REQUIRE(f.size() == 2);
    CHECK(f[Int("1000003")] == 1);
    CHECK(f[Int("1000033")] == 1);

    CHECK(factor(Int(1)).empty());
    CHECK(factor(Int(0)).empty());
}

TEST_CASE("squarefree part") {
    CHECK(squarefree_part(Rat(8)) == 2);
    CHECK(squarefree_part(Rat(-769)) == -769);
    CHECK(squarefree_part(Rat(1, 2)) == 2);   // 1/2 ~ 2 mod squares
    CHECK(squarefree_part(Rat(4)) == 1);
    CHECK(squarefree_part(Rat(-4, 9)) == -1);
    CHECK(squarefree_part(Rat(4369)) == 4369);
    CHECK_THROWS_AS(squarefree_part(Rat(0)), std::domain_error);
    // squarefree part is a square-class invariant
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pick(1, 5000);
    for (int i = 0; i < 200; ++i) {
        long n = pick(rng), s = pick(rng);
        CHECK(squarefree_part(Rat(n)) == squarefree_part(Rat(n) * Rat(s) * Rat(s)));
    }
}

TEST_CASE("out-of-range inputs are rejected, not mangled") {
    CHECK_THROWS_AS(is_prime(Int("18446744073709551616")), std::domain_error);
    // a squarefree semiprime whose hard part exceeds 64 bits
    Int huge = Int("1099511627791") * Int("1099511627803");
    CHECK_THROWS_AS(factor(huge * 4), std::domain_error);
    CHECK_THROWS_AS(squarefree_part(Rat(huge)), std::domain_error);
}

TEST_CASE("rational square detection and exact square roots") {
    CHECK(is_square_rat(Rat(49, 64)));
    CHECK_FALSE(is_square_rat(Rat(-49, 64)));
    CHECK_FALSE(is_square_rat(Rat(2)));
    CHECK(sqrt_rat(Rat(49, 64)) == Rat(7, 8));
    CHECK_THROWS_AS(sqrt_rat(Rat(2)), std::domain_error);
}
