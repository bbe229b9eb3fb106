"""Condition-lattice reports, chain witnesses, relative-graph verification."""

import random

import pytest

from clpa.errors import NoCycle, NotAnExit
from clpa.graphs import predicates
from clpa.reports import (
    artinian_failure_witness,
    noetherian_chain_witness,
    relgraph_verify,
    report,
)

from conftest import (
    cycle,
    cycle_with_exit,
    fan,
    loop,
    random_no_exit_object,
    random_object,
    rose,
    tree,
)


class TestReportVerdicts:
    def test_loop_with_relation(self):
        rep = report(loop())
        # noetherian and graded-artinian lattices hold, non-graded artinian fails
        for code in ("5", "8l", "9l", "10r", "11l", "15", "16l", "17r", "6", "7"):
            assert rep.verdict(code), code
        for code in ("5'", "6'", "7'l", "8'l", "8'r"):
            assert not rep.verdict(code), code
        # sink-free with full relations: the Laurent-only family holds too
        assert rep.verdict("5''")

    def test_rose_all_families_fail(self):
        rep = report(rose())
        for code in ("5", "5'", "5''", "9l", "17l", "7"):
            assert not rep.verdict(code), code

    def test_acyclic_tree_everything_holds(self):
        rep = report(tree())
        for code in ("5", "5'", "8l", "15", "6'", "8'r"):
            assert rep.verdict(code), code
        assert not rep.verdict("5''")  # it has sinks

    def test_toeplitz_case(self):
        # loop with S empty: the relative graph acquires an exit
        rep = report(loop(False))
        assert not rep.relative_no_exit
        for code in ("5", "9l", "15", "7"):
            assert not rep.verdict(code), code
        assert "noetherian_chain" in rep.witnesses

    def test_families_internally_consistent(self):
        rng = random.Random(19)
        objects = [loop(), loop(False), rose(), tree(), fan(2), cycle(3)]
        objects += [random_object(rng) for _ in range(20)]
        for obj in objects:
            rep = report(obj)
            for family, verdict in rep.family_verdicts().items():
                assert verdict is not None, f"{family} mixes verdicts"

    def test_strictness_note_when_cycles_present(self):
        rep = report(loop())
        assert any("strict" in note for note in rep.notes)
        assert "artinian_failure" in rep.witnesses

    def test_citation_entries_marked(self):
        rep = report(loop())
        cited = {e.code for e in rep.entries if e.citation_only}
        assert cited == {"12", "13", "14"}

    def test_json_shape(self):
        data = report(loop()).to_json()
        assert {"object", "relative_graph", "families", "conditions", "notes",
                "witnesses"} <= set(data)
        assert all("code" in c and "verdict" in c for c in data["conditions"])
        assert data["families"]["noetherian"]["verdict"] is True


class TestNoetherianWitness:
    def test_rose_chain(self):
        obj = rose()
        cycles = predicates(obj.graph).cycles
        witness = noetherian_chain_witness(obj, cycles[0], 3)
        assert len(witness.elements) == 3
        assert any("strictness evidence" in s for s in witness.statements)

    def test_requires_exit(self):
        obj = loop()
        (c,) = predicates(obj.graph).cycles
        with pytest.raises(NotAnExit):
            noetherian_chain_witness(obj, c, 2)

    def test_two_cycle_with_exit(self):
        obj = cycle_with_exit(2)
        cycles = predicates(obj.graph).cycles
        witness = noetherian_chain_witness(obj, cycles[0], 2)
        assert witness.base_vertex == "v1"


class TestArtinianWitness:
    def test_loop_powers_and_chain(self):
        obj = loop()
        (c,) = predicates(obj.graph).cycles
        witness = artinian_failure_witness(obj, c, 3)
        assert len(witness.powers) == 3 and len(witness.chain) == 3
        text = witness.transcript()
        assert "image of h_1 is t^1" in text
        assert "strictness evidence at bound 4" in text

    def test_two_cycle_images(self):
        obj = cycle(2)
        (c,) = predicates(obj.graph).cycles
        witness = artinian_failure_witness(obj, c, 2)
        assert "image of h_2 is t^2" in witness.transcript()

    def test_requires_cycle_in_s(self):
        obj = loop(False)
        (c,) = predicates(obj.graph).cycles
        with pytest.raises(NoCycle):
            artinian_failure_witness(obj, c, 2)

    def test_acyclic_has_no_cycle(self):
        obj = fan(2)
        assert predicates(obj.graph).cycles == ()


class TestRelgraphVerify:
    def test_toeplitz(self):
        rep = relgraph_verify(loop(False))
        assert rep.ok
        ctx_element = rep.phi["v'"]
        # the primed sink maps to v minus the loop projection, an idempotent
        assert ctx_element * ctx_element == ctx_element

    def test_full_relations_identity(self):
        obj = fan(2, s_on=True)
        rep = relgraph_verify(obj)
        assert rep.ok
        ctx = next(iter(rep.phi.values())).ctx
        for v in obj.graph.vertices:
            assert rep.phi[v] == ctx.vertex(v)
        for e in obj.graph.edge_ids():
            assert rep.phi[e] == ctx.edge(e)

    def test_bifurcation_without_relations(self):
        rep = relgraph_verify(fan(2))
        assert rep.ok
        phi_prime = rep.phi["v'"]
        ctx = phi_prime.ctx
        e1 = ctx.graph.make_path(["e1"])
        e2 = ctx.graph.make_path(["e2"])
        expected = ctx.vertex("v") - ctx.monomial(e1, e1) - ctx.monomial(e2, e2)
        assert phi_prime == expected

    def test_twenty_random_objects(self):
        rng = random.Random(67)
        for _ in range(20):
            obj = random_object(rng)
            rep = relgraph_verify(obj)
            assert rep.ok, (obj, rep.failures, rep.degree_failures)

    def test_random_no_exit_objects(self):
        rng = random.Random(73)
        for _ in range(10):
            obj = random_no_exit_object(rng)
            assert relgraph_verify(obj).ok
