#include <catch2/catch_amalgamated.hpp>

#include "khopf/shapes.hpp"

using namespace khopf;

TEST_CASE("interval sets and inverse") {
    CHECK(interval_set({3, 2}) == std::set<int>{3});
    CHECK(interval_set({}).empty());
    CHECK(comp_from_set({3}, 5) == Composition{3, 2});
    CHECK(comp_from_set({}, 0) == Composition{});
    CHECK_THROWS_AS(comp_from_set({5}, 5), std::invalid_argument);
    for (int n = 0; n <= 7; ++n)
        for (const auto& a : compositions_of(n)) {
            CHECK(comp_from_set(interval_set(a), n) == a);
        }
}

TEST_CASE("lambda_peak") {
    CHECK(lambda_peak({1, 2, 1, 1, 1, 3, 1}) == Composition{3, 6, 1});
    CHECK(lambda_peak({5}) == Composition{5});
    CHECK(lambda_peak({1, 1, 1}) == Composition{3});
    CHECK(lambda_peak({}) == Composition{});
    // idempotent, fixes peak compositions
    for (int n = 0; n <= 7; ++n)
        for (const auto& a : compositions_of(n)) {
            Composition l = lambda_peak(a);
            CHECK(is_peak_composition(l));
            CHECK(lambda_peak(l) == l);
        }
}

TEST_CASE("composition transforms") {
    CHECK(comp_reverse({3, 2}) == Composition{2, 3});
    CHECK(comp_complement({3, 2}) == Composition{1, 1, 2, 1});
    CHECK(comp_transpose({3, 2}) == Composition{1, 2, 1, 1});
    CHECK(comp_odd({3, 6, 3, 4, 2}) == Composition{3, 1, 5, 3, 1, 3, 1, 1});
    CHECK(comp_flat({2}) == Composition{2});
    CHECK(comp_flat(comp_flat({3, 2})) == Composition{3, 2});
    CHECK_THROWS_AS(comp_flat({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(comp_odd({1, 2}), std::invalid_argument);

    for (int n = 0; n <= 7; ++n) {
        for (const auto& a : compositions_of(n)) {
            CHECK(comp_reverse(comp_reverse(a)) == a);
            CHECK(comp_complement(comp_complement(a)) == a);
            CHECK(comp_transpose(comp_transpose(a)) == a);
        }
        for (const auto& a : peak_compositions_of(n)) CHECK(comp_flat(comp_flat(a)) == a);
    }
}

TEST_CASE("odd is a bijection from peak compositions onto odd compositions") {
    for (int n = 0; n <= 12; ++n) {
        std::set<Composition> images;
        for (const auto& a : peak_compositions_of(n)) {
            Composition o = comp_odd(a);
            for (int p : o) CHECK(p % 2 == 1);
            CHECK(images.insert(o).second);  // injective
        }
        int odd_count = 0;
        for (const auto& a : compositions_of(n)) {
            bool allodd = true;
            for (int p : a)
                if (p % 2 == 0) allodd = false;
            if (allodd) ++odd_count;
        }
        CHECK((int)images.size() == odd_count);
    }
}

TEST_CASE("shifted diagrams") {
    auto rc = removable_corners({3, 1});
    CHECK(rc == std::vector<Box>{{1, 3}, {2, 2}});
    CHECK(shifted_diagram({4, 3, 1}, {2}).size() == 6);
    CHECK(is_vertical_strip(shifted_diagram({4, 2}, {3, 1})));
    CHECK_FALSE(is_vertical_strip(shifted_diagram({5, 2}, {3, 2})));
    CHECK(shifted_diagram({2, 1}, {3, 1}).empty());  // mu not inside lambda

    for (int n = 0; n <= 6; ++n)
        for (const auto& lam : strict_partitions_of(n))
            for (const auto& mu : strict_subpartitions(lam))
                CHECK((int)shifted_diagram(lam, mu).size() == comp_size(lam) - comp_size(mu));
}

TEST_CASE("enumerations in canonical order") {
    CHECK(peak_compositions_of(3) == std::vector<Composition>{{3}, {2, 1}});
    CHECK(strict_partitions_of(5) == std::vector<StrictPartition>{{5}, {4, 1}, {3, 2}});
    CHECK(compositions_of(0) == std::vector<Composition>{{}});
    for (int n = 1; n <= 10; ++n)
        CHECK((long long)compositions_of(n).size() == (1LL << (n - 1)));
}

TEST_CASE("text forms") {
    CHECK(shape_to_string({3, 2}) == "3,2");
    CHECK(shape_to_string({}) == "()");
    CHECK(shape_from_string("3,2") == std::vector<int>{3, 2});
    CHECK(shape_from_string("()").empty());
    CHECK(shape_from_string("").empty());
}

TEST_CASE("partition transpose") {
    CHECK(partition_transpose({2, 1}) == std::vector<int>{2, 1});
    CHECK(partition_transpose({3}) == std::vector<int>{1, 1, 1});
    CHECK(partition_transpose({}) == std::vector<int>{});
}
