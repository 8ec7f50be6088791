import pytest

from diva.orders import (
    CycleError,
    DomainError,
    PartialPreference,
    TotalOrder,
    TriageLists,
    ValidationError,
    add_edges,
    enumerate_extensions,
    initial_extension,
    order_from_triage,
)

from conftest import FIXTURE_POSETS, brute_extensions, brute_reachable


class TestTriageLists:
    def test_disjoint_ok(self):
        t = TriageLists(frozenset("ab"), frozenset("cd"), frozenset("ef"))
        assert t.items() == frozenset("abcdef")
        assert t.bucket_of("c") == "ok"
        assert t.bucket_of("zz") is None

    def test_overlap_names_duplicate(self):
        with pytest.raises(ValidationError, match="'x'"):
            TriageLists(frozenset({"x", "a"}), frozenset({"x"}), frozenset())

    def test_empty_item_rejected(self):
        with pytest.raises(ValidationError):
            TriageLists(frozenset({""}), frozenset(), frozenset())


class TestOrderFromTriage:
    def test_single_items_per_bucket(self):
        p = order_from_triage(TriageLists(frozenset("L"), frozenset("O"), frozenset("D")))
        assert p.edges == {("L", "O"), ("O", "D"), ("L", "D")}

    def test_all_empty(self):
        p = order_from_triage(TriageLists())
        assert p.domain == frozenset() and p.edges == frozenset()

    def test_empty_middle_layer(self):
        p = order_from_triage(TriageLists(frozenset("ab"), frozenset(), frozenset("c")))
        assert p.edges == {("a", "c"), ("b", "c")}
        assert p.incomparable("a", "b")

    def test_always_acyclic_random(self):
        import random

        rnd = random.Random(7)
        items = [f"m{i}" for i in range(12)]
        for _ in range(50):
            rnd.shuffle(items)
            a, b = rnd.randint(0, 4), rnd.randint(5, 9)
            t = TriageLists(frozenset(items[:a]), frozenset(items[a:b]), frozenset(items[b:]))
            p = order_from_triage(t)  # construction itself verifies acyclicity
            for i in t.like:
                for j in t.dislike:
                    assert p.is_preferred(i, j)


class TestAddEdges:
    def test_transitive_reach(self):
        p = add_edges(PartialPreference((), {("a", "b")}), {("b", "c")})
        assert p.is_preferred("a", "c")

    def test_direct_contradiction(self):
        p = PartialPreference((), {("a", "b")})
        with pytest.raises(CycleError) as err:
            add_edges(p, {("b", "a")})
        cycle = err.value.cycle
        assert cycle[0] == cycle[-1] and set(cycle) == {"a", "b"}

    def test_bipartite_session_pattern(self):
        p = add_edges(PartialPreference("abcd"), {("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")})
        assert p.incomparable("a", "b") and p.incomparable("c", "d")
        assert p.is_preferred("a", "c") and p.is_preferred("b", "d")

    def test_domain_extension(self):
        p = add_edges(PartialPreference(), {("new1", "new2")})
        assert p.domain == {"new1", "new2"}

    def test_self_edge_is_cycle(self):
        with pytest.raises(CycleError):
            add_edges(PartialPreference(), {("a", "a")})


class TestIsPreferred:
    def test_chain_transitivity(self):
        p = FIXTURE_POSETS["chain3"]
        assert p.is_preferred("a", "c")

    def test_antichain_incomparable(self):
        p = FIXTURE_POSETS["antichain2"]
        assert not p.is_preferred("a", "b") and not p.is_preferred("b", "a")

    def test_irreflexive(self):
        assert not FIXTURE_POSETS["chain3"].is_preferred("a", "a")

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            FIXTURE_POSETS["chain3"].is_preferred("a", "zz")

    def test_matches_bfs_oracle(self):
        for name, p in FIXTURE_POSETS.items():
            for a in sorted(p.domain):
                reach = brute_reachable(p.edges, a)
                for b in sorted(p.domain):
                    assert p.is_preferred(a, b) == (b in reach), (name, a, b)


class TestInitialExtension:
    def test_unique_extension(self):
        t = TriageLists(frozenset("x"), frozenset("y"), frozenset("z"))
        assert initial_extension(order_from_triage(t)).sequence == ("x", "y", "z")

    def test_lexicographic_tiebreak(self):
        assert initial_extension(PartialPreference(["b", "a"])).sequence == ("a", "b")

    def test_valid_and_deterministic(self):
        p = FIXTURE_POSETS["v3"]
        first = initial_extension(p)
        assert first.sequence in brute_extensions(p.domain, p.edges)
        assert all(initial_extension(p).sequence == first.sequence for _ in range(5))


class TestEnumerateExtensions:
    def test_counts_against_permutation_filter(self):
        for name, p in FIXTURE_POSETS.items():
            got = [e.sequence for e in enumerate_extensions(p)]
            assert got == brute_extensions(p.domain, p.edges), name

    def test_chain_single(self):
        assert len(enumerate_extensions(FIXTURE_POSETS["chain3"])) == 1

    def test_antichain_factorial(self):
        assert len(enumerate_extensions(FIXTURE_POSETS["antichain3"])) == 6

    def test_v3_three(self):
        got = [e.sequence for e in enumerate_extensions(FIXTURE_POSETS["v3"])]
        assert got == [("a", "b", "c"), ("a", "c", "b"), ("c", "a", "b")]

    def test_cap_refusal(self):
        items = [f"m{i:02d}" for i in range(11)]
        big_chain = PartialPreference(items, set(zip(items, items[1:])))
        with pytest.raises(ValidationError, match="cap"):
            enumerate_extensions(big_chain)
        assert len(enumerate_extensions(big_chain, cap=11)) == 1


class TestTotalOrder:
    def test_duplicate_rejected(self):
        with pytest.raises(ValidationError):
            TotalOrder(("a", "a"))

    def test_extends(self):
        p = FIXTURE_POSETS["v3"]
        assert TotalOrder(("a", "b", "c")).extends(p)
        assert not TotalOrder(("b", "a", "c")).extends(p)

    def test_restrict_keeps_order(self):
        t = TotalOrder(("d", "b", "a", "c"))
        assert t.restrict({"a", "b"}).sequence == ("b", "a")


class TestRestrictProject:
    def test_restriction_keeps_closure_relations(self):
        chain = FIXTURE_POSETS["chain3"]
        sub = chain.restrict({"a", "c"})
        assert sub.is_preferred("a", "c")

    def test_project_adds_free_items(self):
        p = FIXTURE_POSETS["v3"]
        q = p.project({"a", "b", "z"})
        assert q.domain == {"a", "b", "z"}
        assert q.is_preferred("a", "b")
        assert q.incomparable("a", "z")

    def test_project_drops_outside_edges(self):
        p = PartialPreference((), {("a", "b"), ("b", "c")})
        q = p.project({"a", "c"})
        # the a>c relation survives because it holds through the dropped item
        assert q.is_preferred("a", "c")
        q2 = p.project({"b", "c"})
        assert q2.is_preferred("b", "c")
