#include "support.hpp"

#include "divsets/diversity.hpp"
#include "divsets/encoding.hpp"
#include "divsets/error.hpp"

#include <doctest.h>

#include <map>

using namespace divsets;
using namespace divsets::test;

TEST_SUITE("core_encoding")
{
    TEST_CASE("bitvec basics")
    {
        auto b = BitVec::from_string("10110");
        CHECK(b.size() == 5);
        CHECK(b.count() == 3);
        CHECK(b.to_string() == "10110");
        CHECK(b.ones() == std::vector<std::size_t>{0, 2, 3});
        CHECK(b.zeros() == std::vector<std::size_t>{1, 4});
        b.flip_all();
        CHECK(b.to_string() == "01001");
        CHECK(b.words()[0] == 0b10010);
        CHECK(hamming_distance(BitVec::from_string("1100"), BitVec::from_string("1010")) == 2);
        CHECK_THROWS_AS((void)BitVec::from_string("10x"), InvalidInput);
    }

    TEST_CASE("bitvec tail bits stay zero across word boundaries")
    {
        BitVec b(70, true);
        CHECK(b.count() == 70);
        b.flip_all();
        CHECK(b.none());
        b.flip_all();
        CHECK(b.words()[1] == b.tail_mask(1));
    }

    TEST_CASE("encode concatenates")
    {
        const std::vector<Solution> s{BitVec::from_string("101"), BitVec::from_string("010")};
        const auto ind = encode(s);
        CHECK(ind.genome().to_string() == "101010");
        CHECK(ind.genome_length() == 6);
        CHECK(encode(std::vector<Solution>{BitVec::from_string("0000")}).genome().to_string() == "0000");
    }

    TEST_CASE("decode splits")
    {
        const auto parts = decode_genome(BitVec::from_string("101010"), 3);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].to_string() == "101");
        CHECK(parts[1].to_string() == "010");
        const auto ones = decode_genome(BitVec::from_string("0000"), 1);
        CHECK(ones.size() == 4);
        for (const auto& p : ones) {
            CHECK(p.to_string() == "0");
        }
        CHECK_THROWS_AS((void)decode_genome(BitVec::from_string("10101"), 3), InvalidInput);
    }

    TEST_CASE("encode rejects empty and ragged input")
    {
        CHECK_THROWS_AS((void)encode(std::vector<Solution>{}), InvalidInput);
        CHECK_THROWS_AS((void)encode(std::vector<Solution>{BitVec(3), BitVec(4)}), InvalidInput);
    }

    TEST_CASE("decode(encode(S)) is the identity")
    {
        Rng rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            const auto r = 1 + uniform_index(rng, 8);
            const auto n = 1 + uniform_index(rng, 150);
            const auto rows = random_rows(r, n, rng);
            CHECK(decode(encode(rows)) == rows);
            CHECK(decode_genome(encode(rows).genome(), n) == rows);
        }
    }

    TEST_CASE("mutation with chi 0 and 1")
    {
        Rng rng(3);
        const auto ind = random_individual(4, 37, rng);
        CHECK(standard_bit_mutation(ind, 0.0, rng).genome() == ind.genome());
        auto flipped = ind.genome();
        flipped.flip_all();
        CHECK(standard_bit_mutation(ind, 1.0, rng).genome() == flipped);
        CHECK_THROWS_AS((void)standard_bit_mutation(ind, 1.5, rng), InvalidInput);
        CHECK_THROWS_AS((void)standard_bit_mutation(ind, -0.1, rng), InvalidInput);
    }

    TEST_CASE("mutation flips 0.5 r bits on average at chi = 0.5/n")
    {
        Rng rng(5);
        const std::size_t r = 10;
        const std::size_t n = 40;
        const auto ind = random_individual(r, n, rng);
        const double chi = 0.5 / static_cast<double>(n);
        const int trials = 100000;
        double flips = 0;
        std::vector<double> per_solution(r, 0.0);
        for (int t = 0; t < trials; ++t) {
            const auto out = standard_bit_mutation(ind, chi, rng);
            for (std::size_t i = 0; i < r; ++i) {
                const auto d = static_cast<double>(hamming_distance(out.solution(i), ind.solution(i)));
                flips += d;
                per_solution[i] += d;
            }
        }
        CHECK(within_binomial(flips, static_cast<double>(trials) * static_cast<double>(r * n), chi));
        // Every solution sees the same per-bit rate.
        for (auto f : per_solution) {
            CHECK(within_binomial(f, static_cast<double>(trials) * static_cast<double>(n), chi));
        }
    }

    TEST_CASE("mutation keeps cached column counts exact")
    {
        Rng rng(8);
        auto ind = random_individual(6, 90, rng);
        ind.ensure_column_counts();
        for (int t = 0; t < 200; ++t) {
            ind = standard_bit_mutation(std::move(ind), 0.05, rng);
            REQUIRE(ind.column_counts().has_value());
            REQUIRE(ind.audit_column_counts());
        }
        CHECK(*ind.column_counts() == ColumnCounts::from_rows(ind.solutions()));
    }

    TEST_CASE("shuffle trivial cases")
    {
        Rng rng(2);
        const auto one = random_individual(1, 20, rng);
        CHECK(shuffle_solutions(one, rng).genome() == one.genome());
        const auto row = random_bits(20, rng);
        const auto same = encode(std::vector<Solution>(5, row));
        CHECK(shuffle_solutions(same, rng).genome() == same.genome());
    }

    TEST_CASE("shuffle orderings are uniform")
    {
        Rng rng(4);
        const std::vector<Solution> blocks{BitVec::from_string("100"), BitVec::from_string("010"), BitVec::from_string("001")};
        const auto ind = encode(blocks);
        std::map<std::string, int> freq;
        const int trials = 10000;
        for (int t = 0; t < trials; ++t) {
            ++freq[shuffle_solutions(ind, rng).genome().to_string()];
        }
        CHECK(freq.size() == 6);
        for (const auto& [order, k] : freq) {
            CHECK(within_binomial(k, trials, 1.0 / 6.0));
        }
    }

    TEST_CASE("shuffle preserves diversity and caches")
    {
        Rng rng(6);
        for (int t = 0; t < 50; ++t) {
            auto ind = random_individual(7, 33, rng);
            const auto before = distance_sum(ind.ensure_column_counts());
            ind.set_evaluation({1.0, 2.0}, 0);
            const auto out = shuffle_solutions(ind, rng);
            CHECK(distance_sum(ColumnCounts::from_rows(out.solutions())) == before);
            CHECK(out.fitness() == ind.fitness());
            CHECK(out.audit_column_counts());
        }
    }

    TEST_CASE("crossover trivial cases")
    {
        Rng rng(9);
        const auto row = random_bits(30, rng);
        const auto a = encode(std::vector<Solution>(4, row));
        const auto [c, d] = uniform_crossover(a, a, 1.0, rng);
        CHECK(c.genome() == a.genome());
        CHECK(d.genome() == a.genome());

        const auto x = random_individual(4, 30, rng);
        const auto y = random_individual(4, 30, rng);
        const auto [e, f] = uniform_crossover(x, y, 0.0, rng);
        CHECK(e.genome() == x.genome());
        CHECK(f.genome() == y.genome());
    }

    TEST_CASE("crossover of all-zeros and all-ones yields complementary offspring")
    {
        Rng rng(10);
        const auto zeros = encode(std::vector<Solution>(3, BitVec(50)));
        const auto ones = encode(std::vector<Solution>(3, BitVec(50, true)));
        const auto [c, d] = uniform_crossover(zeros, ones, 1.0, rng);
        auto complement = c.genome();
        complement.flip_all();
        CHECK(d.genome() == complement);
    }

    TEST_CASE("crossover conserves bits per position")
    {
        Rng rng(12);
        for (int t = 0; t < 10000; ++t) {
            const auto r = 1 + uniform_index(rng, 5);
            const auto n = 1 + uniform_index(rng, 80);
            const auto a = random_individual(r, n, rng);
            // The second parent is shuffled first, so conservation holds against that order;
            // the identity ordering is forced by using identical blocks.
            const auto b = encode(std::vector<Solution>(r, random_bits(n, rng)));
            const auto [c, d] = uniform_crossover(a, b, 1.0, rng);
            REQUIRE(c.genome_length() == a.genome_length());
            REQUIRE(d.genome_length() == a.genome_length());
            for (std::size_t p = 0; p < a.genome_length(); ++p) {
                REQUIRE(int(c.genome_bit(p)) + int(d.genome_bit(p)) == int(a.genome_bit(p)) + int(b.genome_bit(p)));
            }
            // For arbitrary parents the shuffle permutes blocks, so conservation holds per column.
            const auto g = random_individual(r, n, rng);
            const auto [h, k] = uniform_crossover(a, g, 1.0, rng);
            const auto before = ColumnCounts::from_rows(a.solutions()).counts;
            const auto other = ColumnCounts::from_rows(g.solutions()).counts;
            const auto left = ColumnCounts::from_rows(h.solutions()).counts;
            const auto right = ColumnCounts::from_rows(k.solutions()).counts;
            for (std::size_t j = 0; j < n; ++j) {
                REQUIRE(left[j] + right[j] == before[j] + other[j]);
            }
        }
    }
}
