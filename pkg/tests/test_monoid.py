"""Monoid presentations, the word-problem search, verdicts, and witnesses."""

import random

import pytest

from clpa.errors import NotAnExit
from clpa.graphs import predicates
from clpa.monoid import (
    MonoidElement,
    atomic_cancellative_verdict,
    cancellation_witness,
    equal,
    invariant_value,
    path_count_invariant,
    presentation,
    relations_preserved,
)

from conftest import (
    NO_EXIT_CORPUS,
    cycle_with_exit,
    fan,
    loop,
    random_no_exit_object,
    rose,
    single_sink,
)


class TestPresentation:
    def test_single_sink_free(self):
        pres = presentation(single_sink())
        assert pres.generators == ("w",) and pres.relations == ()

    def test_loop_degenerate_relation(self):
        pres = presentation(loop())
        assert pres.relations == (("v", MonoidElement.of("v")),)

    def test_bifurcation_relation(self):
        pres = presentation(fan(2, s_on=True))
        assert ("v", MonoidElement.of("u1", "u2")) in pres.relations

    def test_unrelated_vertex_generators(self):
        # v -> u1 with S empty: the relative graph adds the isolated sink v';
        # the generator named v stands for the expansion of v, so the lone
        # relation is v = u1 and v' is a free generator
        pres = presentation(fan(1))
        assert set(pres.generators) == {"v", "u1", "v'"}
        assert pres.relations == (("v", MonoidElement.of("u1")),)

    def test_toeplitz_relation(self):
        # loop with S empty: v emits both c and its primed copy, so v = v + v'
        pres = presentation(loop(False))
        assert pres.relations == (("v", MonoidElement.of("v", "v'")),)


class TestEqual:
    def test_one_step_relation(self):
        pres = presentation(fan(2, s_on=True))
        answer = equal(pres, pres.element("v"), pres.element("u1", "u2"), depth=1)
        assert answer.verdict == "yes"

    def test_distinct_sinks_separated(self):
        pres = presentation(fan(2, s_on=True))
        answer = equal(pres, pres.element("u1"), pres.element("u2"))
        assert answer.verdict == "no"
        assert answer.separating_functional is not None

    def test_bounded_search_admits_unknown(self):
        # the toeplitz relation v = v + v' makes v and v + 3v' equal only at
        # depth 3; at depth 1 the search must honestly give up
        pres = presentation(loop(False))
        v = pres.element("v")
        target = v + pres.element("v'", "v'", "v'")
        assert equal(pres, v, target, depth=1).verdict == "unknown"
        assert equal(pres, v, target, depth=4).verdict == "yes"

    def test_reflexive(self):
        pres = presentation(loop())
        assert equal(pres, pres.element("v"), pres.element("v")).verdict == "yes"


class TestInvariant:
    def test_fan_invariant_rank(self):
        # n sinks plus the primed copy of the emitter: N^(n+1)
        for n in (1, 2, 3):
            pres = presentation(fan(n))
            inv = path_count_invariant(pres)
            assert inv is not None
            assert len(next(iter(inv.values()))) == n + 1
            assert relations_preserved(pres, inv) == []

    def test_loop_invariant(self):
        pres = presentation(loop())
        inv = path_count_invariant(pres)
        assert inv == {"v": (1,)}

    def test_invariant_respects_relations_on_corpus(self):
        for name, make in sorted(NO_EXIT_CORPUS.items()):
            pres = presentation(make())
            inv = path_count_invariant(pres)
            assert inv is not None, name
            assert relations_preserved(pres, inv) == [], name

    def test_invariant_agrees_with_equal(self):
        rng = random.Random(31)
        for _ in range(10):
            obj = random_no_exit_object(rng)
            pres = presentation(obj)
            inv = path_count_invariant(pres)
            if inv is None:
                continue
            gens = pres.generators
            for _ in range(10):
                a = MonoidElement.of(*rng.choices(gens, k=rng.randint(0, 3)))
                b = MonoidElement.of(*rng.choices(gens, k=rng.randint(0, 3)))
                answer = equal(pres, a, b, depth=6)
                same_inv = invariant_value(inv, a) == invariant_value(inv, b)
                if answer.verdict == "yes":
                    assert same_inv
                if answer.verdict == "no":
                    assert not same_inv

    def test_refinement_on_invariant_images(self):
        # vectors in N^k refine: a + b = c + d splits into a 2x2 grid
        rng = random.Random(41)
        pres = presentation(fan(2))
        inv = path_count_invariant(pres)
        gens = pres.generators
        for _ in range(40):
            a, b, c, d = (
                invariant_value(inv, MonoidElement.of(*rng.choices(gens, k=2)))
                for _ in range(4)
            )
            total_left = tuple(x + y for x, y in zip(a, b))
            total_right = tuple(x + y for x, y in zip(c, d))
            if total_left != total_right:
                continue
            r11 = tuple(min(x, y) for x, y in zip(a, c))
            r12 = tuple(x - y for x, y in zip(a, r11))
            r21 = tuple(x - y for x, y in zip(c, r11))
            r22 = tuple(x - y for x, y in zip(b, r21))
            assert all(x >= 0 for x in r22)
            assert tuple(x + y for x, y in zip(r21, r22)) == b


class TestVerdicts:
    def test_no_exit_corpus_all_free(self):
        for name, make in sorted(NO_EXIT_CORPUS.items()):
            verdict = atomic_cancellative_verdict(make())
            assert verdict.atomic_cancellative, name
            assert verdict.invariant is not None

    def test_fan_rank(self):
        verdict = atomic_cancellative_verdict(fan(3))
        assert verdict.invariant_rank == 4

    def test_rose_fails_with_witness(self):
        verdict = atomic_cancellative_verdict(rose())
        assert not verdict.atomic_cancellative
        assert verdict.witness is not None
        assert len(verdict.witness.idempotents) == 3

    def test_toeplitz_fails(self):
        # no-exit graph, but the empty S breaks the cycle condition: the
        # relative graph has an exit and cancellation fails
        verdict = atomic_cancellative_verdict(loop(False))
        assert not verdict.atomic_cancellative
        assert verdict.witness is not None


class TestCancellationWitness:
    def test_rose_chain(self):
        obj = rose()
        (c1, _) = predicates(obj.graph).cycles
        witness = cancellation_witness(obj, c1, 3)
        assert len(witness.idempotents) == 3
        assert "p_1 != p_2" in "\n".join(witness.statements)

    def test_no_exit_cycle_rejected(self):
        obj = loop()
        (c,) = predicates(obj.graph).cycles
        with pytest.raises(NotAnExit):
            cancellation_witness(obj, c, 2)

    def test_two_cycle_with_exit(self):
        obj = cycle_with_exit(2)
        cycles = predicates(obj.graph).cycles
        witness = cancellation_witness(obj, cycles[0], 2)
        assert witness.base_vertex == "v1"
