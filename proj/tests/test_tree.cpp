#include <doctest.h>

#include <algorithm>
#include <bit>

#include "forestlat/enumerate.hpp"
#include "forestlat/tree.hpp"
#include "oracles.hpp"

using namespace forestlat;

TEST_CASE("parse basic trees") {
    Tree t2 = Tree::parse("(a,b)");
    CHECK(t2.leaf_count() == 2);
    CHECK(t2.vertex_count() == 1);

    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(t3.leaf_count() == 3);
    CHECK(t3.vertex_count() == 2);

    CHECK(Tree::parse("a").vertex_count() == 0);
    CHECK(Tree::parse("(a,b);").to_string() == "(a,b)");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Tree::parse("((a,b)"), parse_error);
    CHECK_THROWS_AS(Tree::parse("(a,b,c)"), parse_error);  // non-binary node
    CHECK_THROWS_AS(Tree::parse("(a,a)"), parse_error);    // duplicate label
    CHECK_THROWS_AS(Tree::parse(""), parse_error);
    CHECK_THROWS_AS(Tree::parse("(a,)"), parse_error);
    CHECK_THROWS_AS(Tree::parse("(a,b)x"), parse_error);

    try {
        Tree::parse("((a,b)");
    } catch (const parse_error& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("canonical form sorts children by minimal leaf") {
    CHECK(Tree::parse("(b,a)").to_string() == "(a,b)");
    CHECK(Tree::parse("(c,(a,b))").to_string() == "((a,b),c)");
    CHECK(Tree::parse("((x,y),(z,((p,q),(r,s))))").to_string() ==
          "((((p,q),(r,s)),z),(x,y))");
}

TEST_CASE("meet vertices") {
    Tree t3 = Tree::parse("((a,b),c)");
    // post-order: cherry ab = 0, root = 1
    CHECK(t3.meet_vertex("a", "b") == 0);
    CHECK(t3.meet_vertex("a", "c") == 1);

    Tree t4 = Tree::parse("((a,b),(c,d))");
    CHECK(t4.meet_vertex("b", "d") == t4.root_vertex());
    CHECK(t4.meet_vertex("b", "d") == oracles::meet_vertex(t4, t4.leaf_index("b"),
                                                           t4.leaf_index("d")));

    CHECK_THROWS_AS(t3.meet_vertex("a", "a"), std::invalid_argument);
    CHECK_THROWS_AS(t3.meet_vertex("a", "z"), std::invalid_argument);
}

TEST_CASE("s_set") {
    Tree t3 = Tree::parse("((a,b),c)");
    auto s = t3.s_set({"a", "b", "c"});
    CHECK(s == std::vector<int>{0, 1});

    CHECK(t3.s_set({"a"}).empty());
    CHECK(t3.s_set({}).empty());
    CHECK_THROWS_AS(t3.s_set({"z"}), std::invalid_argument);

    Tree t4 = Tree::parse("((a,b),(c,d))");
    CHECK(t4.s_set({"a", "c"}) == std::vector<int>{t4.root_vertex()});
}

TEST_CASE("ancestor_leaves and exponent") {
    Tree t2 = Tree::parse("(a,b)");
    auto [l2, r2] = t2.ancestor_leaves(0);
    CHECK(l2 == t2.leaf_mask_of({"a"}));
    CHECK(r2 == t2.leaf_mask_of({"b"}));

    Tree t3 = Tree::parse("((a,b),c)");
    auto [l3, r3] = t3.ancestor_leaves(t3.root_vertex());
    CHECK(l3 == t3.leaf_mask_of({"a", "b"}));
    CHECK(r3 == t3.leaf_mask_of({"c"}));
    CHECK(t3.exponent(0) == 1);  // cherry
    CHECK(t3.exponent(1) == 2);

    Tree t4 = Tree::parse("((a,b),(c,d))");
    CHECK(t4.exponent(t4.root_vertex()) == 4);

    Tree big = Tree::parse("((x,y),(z,((p,q),(r,s))))");
    auto [lb, rb] = big.ancestor_leaves(big.root_vertex());
    // canonical child order puts the side with the smaller minimal leaf first
    CHECK(lb == big.leaf_mask_of({"z", "p", "q", "r", "s"}));
    CHECK(rb == big.leaf_mask_of({"x", "y"}));
    CHECK(big.exponent_multiset() == std::vector<int>{1, 1, 1, 4, 4, 10});

    CHECK_THROWS_AS(t3.exponent(5), std::invalid_argument);
}

TEST_CASE("restrict") {
    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(t3.restrict_to(t3.full_leaf_mask()).tree == t3);

    auto r = t3.restrict_to({"a", "c"});
    CHECK(r.tree.to_string() == "(a,c)");
    CHECK(r.source_vertex == std::vector<int>{1});  // the root of t3

    Tree t4 = Tree::parse("((a,b),(c,d))");
    auto r2 = t4.restrict_to({"a", "b", "c"});
    CHECK(r2.tree.to_string() == "((a,b),c)");
    CHECK(r2.source_vertex == std::vector<int>{0, 2});

    CHECK_THROWS_AS(t3.restrict_to(LeafMask{0}), std::invalid_argument);
}

TEST_CASE("canonical nice order") {
    Tree t2 = Tree::parse("(a,b)");
    CHECK(t2.canonical_nice_order().label == std::vector<int>{1});

    Tree t4 = Tree::parse("((a,b),(c,d))");
    CHECK(t4.canonical_nice_order().label == std::vector<int>{1, 2, 3});

    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(t3.canonical_nice_order().label == std::vector<int>{1, 2});
}

TEST_CASE("validate nice order") {
    Tree t3 = Tree::parse("((a,b),c)");
    CHECK(t3.validate_nice_order(t3.canonical_nice_order()));
    CHECK_FALSE(t3.validate_nice_order(NiceOrder{{2, 1}}));  // root must exceed descendants

    Tree t4 = Tree::parse("((a,b),(c,d))");
    // cherry cd first, cherry ab second, root last
    CHECK(t4.validate_nice_order(NiceOrder{{2, 1, 3}}));

    CHECK_THROWS_AS(t3.validate_nice_order(NiceOrder{{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(t3.validate_nice_order(NiceOrder{{1}}), std::invalid_argument);
}

TEST_CASE("all nice orders are exactly the valid bijections") {
    for (const char* text : {"(a,b)", "((a,b),c)", "((a,b),(c,d))", "(((a,b),c),(d,e))"}) {
        Tree t = Tree::parse(text);
        auto orders = t.all_nice_orders();
        for (const auto& ord : orders) CHECK(t.validate_nice_order(ord));
        // count by brute force over all permutations
        std::vector<int> perm(t.vertex_count());
        for (int i = 0; i < t.vertex_count(); ++i) perm[i] = i + 1;
        int valid = 0;
        std::sort(perm.begin(), perm.end());
        do {
            if (t.validate_nice_order(NiceOrder{perm})) ++valid;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(static_cast<int>(orders.size()) == valid);
    }
}

TEST_CASE("tree-core invariants across all small trees") {
    for (int k = 2; k <= 6; ++k) {
        for (const Tree& t : enumerate_labeled_trees(k)) {
            // round trip
            CHECK(Tree::parse(t.to_string()) == t);

            // exponents: each pair of leaves meets at exactly one vertex
            int total = 0;
            for (int v = 0; v < t.vertex_count(); ++v) {
                total += t.exponent(v);
                auto [l, r] = t.ancestor_leaves(v);
                CHECK(l != 0);
                CHECK(r != 0);
                CHECK((l & r) == 0);
            }
            CHECK(total == k * (k - 1) / 2);

            // |S(J)| = |J| - 1 for every nonempty J, and agreement with the
            // brute-force meet
            for (LeafMask J = 1; J <= t.full_leaf_mask(); ++J) {
                auto s = oracles::s_set(t, J);
                CHECK(static_cast<int>(s.size()) == std::popcount(J) - 1);
                VertexMask got = t.s_set_mask(J);
                VertexMask expect = 0;
                for (int v : s) expect |= VertexMask{1} << v;
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("restriction functoriality and meet compatibility") {
    for (const char* text :
         {"((a,b),(c,d))", "(((a,b),c),d)", "((x,y),(z,((p,q),(r,s))))"}) {
        Tree t = Tree::parse(text);
        LeafMask full = t.full_leaf_mask();
        for (LeafMask j2 = 1; j2 <= full; ++j2) {
            if (std::popcount(j2) < 2) continue;
            auto r2 = t.restrict_to(j2);
            // meet vertices inherited from the ambient tree
            auto members = t.names_of(j2);
            for (std::size_t x = 0; x < members.size(); ++x)
                for (std::size_t y = x + 1; y < members.size(); ++y) {
                    int inner = r2.tree.meet_vertex(members[x], members[y]);
                    CHECK(r2.source_vertex[inner] == t.meet_vertex(members[x], members[y]));
                }
            // restrict(restrict(T,J2),J1) == restrict(T,J1) for J1 in J2
            for (LeafMask j1 = 1; j1 <= j2; ++j1) {
                if ((j1 & ~j2) || j1 == 0) continue;
                auto direct = t.restrict_to(j1);
                auto via = r2.tree.restrict_to(r2.tree.leaf_mask_of(t.names_of(j1)));
                CHECK(direct.tree == via.tree);
            }
        }
    }
}
