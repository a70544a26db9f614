#include <doctest.h>

#include <algorithm>
#include <bit>

#include "forestlat/enumerate.hpp"
#include "forestlat/partition.hpp"
#include "oracles.hpp"

using namespace forestlat;

namespace {

Partition P(const Tree& t, const char* text) { return parse_partition(t, text); }

}  // namespace

TEST_CASE("partition text round trip and canonical form") {
    Tree t = Tree::parse("((a,b),(c,d))");
    Partition p = P(t, "c,a|b|d");
    CHECK(format_partition(t, p) == "a,c|b|d");  // blocks by minimal element
    CHECK(parse_partition(t, format_partition(t, p)) == p);

    CHECK_THROWS_AS(P(t, "a,b|c"), std::invalid_argument);    // d missing
    CHECK_THROWS_AS(P(t, "a,b|c,d,e"), std::invalid_argument);
    CHECK_THROWS_AS(P(t, "a,a|b,c,d"), std::invalid_argument);
    CHECK_THROWS_AS(P(t, "a,|b,c,d"), parse_error);
}

TEST_CASE("rank additivity") {
    Tree t = Tree::parse("((a,b),(c,d))");
    CHECK(Partition::singletons(4).rank() == 0);
    CHECK(Partition::one_block(4).rank() == 3);
    Partition p = P(t, "a,b|c,d");
    CHECK(p.rank() == 2);
    int sum = 0;
    for (LeafMask b : p.blocks()) sum += std::popcount(b) - 1;
    CHECK(p.rank() == sum);
}

TEST_CASE("admissibility") {
    Tree t = Tree::parse("((a,b),(c,d))");
    CHECK(is_admissible(t, P(t, "a,b|c,d")));
    CHECK_FALSE(is_admissible(t, P(t, "a,c|b,d")));
    CHECK(is_admissible(t, Partition::singletons(4)));

    CHECK_THROWS_AS(is_admissible(t, Partition::singletons(3)), std::invalid_argument);
}

TEST_CASE("refines") {
    Tree t = Tree::parse("((a,b),(c,d))");
    CHECK(refines(P(t, "a|b,c|d"), P(t, "a|b,c,d")));
    Partition p = P(t, "a,b|c|d");
    CHECK(refines(p, p));
    CHECK_FALSE(refines(P(t, "a,b|c,d"), P(t, "a,c|b,d")));
    CHECK_FALSE(refines(P(t, "a,c|b,d"), P(t, "a,b|c,d")));

    CHECK_THROWS_AS(refines(Partition::singletons(3), Partition::singletons(4)),
                    std::invalid_argument);
}

TEST_CASE("meet_adm") {
    Tree t = Tree::parse("((a,b),(c,d))");
    Partition p = P(t, "a,b,c|d");
    CHECK(meet_adm(t, p, p) == p);
    CHECK(meet_adm(t, p, Partition::singletons(4)) == Partition::singletons(4));
    CHECK(meet_adm(t, P(t, "a,b,c|d"), P(t, "a,b,d|c")) == P(t, "a,b|c|d"));
}

TEST_CASE("join_adm") {
    Tree t = Tree::parse("((a,b),(c,d))");
    CHECK(join_adm(t, P(t, "a,b|c|d"), P(t, "a|b|c,d")) == P(t, "a,b|c,d"));
    // shared meet vertex forces a merge
    CHECK(join_adm(t, P(t, "a,c|b|d"), P(t, "a|b,d|c")) == P(t, "a,b,c,d"));
    Partition p = P(t, "a,b|c,d");
    CHECK(join_adm(t, p, p) == p);
}

TEST_CASE("meet and join match the brute-force bounds on all small trees") {
    for (int k = 2; k <= 5; ++k) {
        for (const Tree& t : enumerate_labeled_trees(k)) {
            auto elements = oracles::admissible_partitions(t);
            for (const Partition& a : elements) {
                for (const Partition& b : elements) {
                    auto bj = oracles::join(elements, a, b);
                    auto bm = oracles::meet(elements, a, b);
                    REQUIRE(bj.has_value());
                    REQUIRE(bm.has_value());
                    CHECK(join_adm(t, a, b) == *bj);
                    CHECK(meet_adm(t, a, b) == *bm);
                }
            }
        }
    }
}

TEST_CASE("pi_of_forest") {
    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(pi_of_forest(t3, Forest::bottom({"a", "b", "c"})) == Partition::singletons(3));
    CHECK(pi_of_forest(t3, Forest({t3})) == Partition::one_block(3));
    Forest f({Tree::parse("(a,b)"), Tree::parse("c")});
    CHECK(pi_of_forest(t3, f) == P(t3, "a,b|c"));

    // (a,c) is the restriction of t3 to {a,c}, so this forest is dominated
    Forest g({Tree::parse("(a,c)"), Tree::parse("b")});
    CHECK(pi_of_forest(t3, g) == P(t3, "a,c|b"));
    // not dominated: wrong shape on the same leaves
    Forest h({Tree::parse("((a,c),b)")});
    CHECK_THROWS_AS(pi_of_forest(t3, h), std::invalid_argument);
    // not dominated: inadmissible partition even though each tree restricts
    Tree t4 = Tree::parse("((a,b),(c,d))");
    Forest x({Tree::parse("(a,c)"), Tree::parse("(b,d)")});
    CHECK_THROWS_AS(pi_of_forest(t4, x), std::invalid_argument);
}

TEST_CASE("gamma_of_partition") {
    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(gamma_of_partition(t3, Partition::one_block(3)) == Forest({t3}));
    CHECK(gamma_of_partition(t3, Partition::singletons(3)) ==
          Forest::bottom({"a", "b", "c"}));
    Tree t4 = Tree::parse("((a,b),(c,d))");
    CHECK(gamma_of_partition(t4, P(t4, "a,b|c,d")) ==
          Forest({Tree::parse("(a,b)"), Tree::parse("(c,d)")}));

    CHECK_THROWS_AS(gamma_of_partition(t4, P(t4, "a,c|b,d")), std::invalid_argument);
}

TEST_CASE("pi and gamma are mutually inverse on all small trees") {
    for (int k = 2; k <= 5; ++k) {
        for (const Tree& t : enumerate_labeled_trees(k)) {
            for (const Partition& p : oracles::admissible_partitions(t)) {
                Forest f = gamma_of_partition(t, p);
                CHECK(pi_of_forest(t, f) == p);
                CHECK(gamma_of_partition(t, pi_of_forest(t, f)) == f);
            }
        }
    }
}

TEST_CASE("leq_forest basics") {
    Tree t3 = Tree::parse("((a,b),c)");
    Forest bottom = Forest::bottom({"a", "b", "c"});
    CHECK(leq_forest(bottom, Forest({t3})));
    CHECK(leq_forest(bottom, bottom));

    // distinct trees on the same leaves are incomparable
    Forest f({Tree::parse("((a,b),c)")});
    Forest g({Tree::parse("((a,c),b)")});
    CHECK_FALSE(leq_forest(f, g));
    CHECK_FALSE(leq_forest(g, f));

    Forest cherry({Tree::parse("(a,b)"), Tree::parse("c")});
    CHECK(leq_forest(cherry, f));
    CHECK_FALSE(leq_forest(f, cherry));

    CHECK_THROWS_AS(leq_forest(bottom, Forest::bottom({"a", "b"})), std::invalid_argument);
}

TEST_CASE("leq_forest agrees with refinement inside the interval") {
    for (int k = 2; k <= 5; ++k) {
        for (const Tree& t : enumerate_labeled_trees(k)) {
            auto elements = oracles::admissible_partitions(t);
            std::vector<Forest> forests;
            forests.reserve(elements.size());
            for (const Partition& p : elements) forests.push_back(gamma_of_partition(t, p));
            for (std::size_t i = 0; i < elements.size(); ++i)
                for (std::size_t j = 0; j < elements.size(); ++j)
                    CHECK(leq_forest(forests[i], forests[j]) ==
                          refines(elements[i], elements[j]));
        }
    }
}

TEST_CASE("forests of incomparable shapes across blocks") {
    Tree t = Tree::parse("(((a,b),c),(d,e))");
    Forest f({Tree::parse("((a,b),c)"), Tree::parse("(d,e)")});
    CHECK(leq_forest(f, Forest({t})));
    Forest g({Tree::parse("((a,c),b)"), Tree::parse("(d,e)")});
    CHECK_FALSE(leq_forest(g, Forest({t})));
    // a lower block split across two upper trees
    Forest h({Tree::parse("(c,d)"), Tree::parse("a"), Tree::parse("b"), Tree::parse("e")});
    CHECK_FALSE(leq_forest(h, f));
}
