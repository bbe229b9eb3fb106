"""Hypothesis-driven structural invariants across randomly drawn objects."""

from hypothesis import given, settings
from hypothesis import strategies as st

from clpa.algebra import AlgebraContext
from clpa.classify import check_no_exit_object, classify
from clpa.graphs import (
    CLObject,
    Graph,
    complete,
    is_complete_subobject,
    predicates,
    relative_graph,
)


@st.composite
def small_objects(draw):
    """A multigraph on up to 4 vertices with a valid S subset."""
    n = draw(st.integers(min_value=1, max_value=4))
    vertices = [f"v{i}" for i in range(n)]
    m = draw(st.integers(min_value=0, max_value=5))
    edges = [
        (
            f"e{k}",
            draw(st.sampled_from(vertices)),
            draw(st.sampled_from(vertices)),
        )
        for k in range(m)
    ]
    g = Graph(vertices, edges)
    regs = g.regular_vertices()
    s_set = [v for v in regs if draw(st.booleans())]
    return CLObject(g, s_set)


@settings(max_examples=60, deadline=None)
@given(obj=small_objects(), data=st.data())
def test_closure_output_is_always_complete(obj, data):
    vs = [v for v in sorted(obj.graph.vertices) if data.draw(st.booleans())]
    keep = set(vs)
    es = [e for e in obj.graph.edges if e[1] in keep and e[2] in keep
          and data.draw(st.booleans())]
    closed = complete(Graph(vs, es), obj)
    ok, violations = is_complete_subobject(closed, obj)
    assert ok, violations


@settings(max_examples=60, deadline=None)
@given(obj=small_objects())
def test_relative_graph_count_formulas(obj):
    rel = relative_graph(obj)
    g = obj.graph
    unrelated = set(g.regular_vertices()) - set(obj.s_set)
    assert len(rel.graph.vertices) == len(g.vertices) + len(unrelated)
    assert len(rel.graph.edges) == len(g.edges) + sum(
        1 for e in g.edge_ids() if g.rng(e) in unrelated
    )


@settings(max_examples=60, deadline=None)
@given(obj=small_objects())
def test_no_exit_object_iff_relative_graph_no_exit(obj):
    ok, _ = check_no_exit_object(obj)
    assert ok == predicates(relative_graph(obj).graph).is_no_exit


@settings(max_examples=40, deadline=None)
@given(obj=small_objects())
def test_classification_block_bookkeeping(obj):
    ok, _ = check_no_exit_object(obj)
    if not ok:
        return
    sig = classify(obj)
    facts = predicates(obj.graph)
    unrelated = set(facts.regular_vertices) - set(obj.s_set)
    assert len(sig.field_blocks) == len(facts.sinks) + len(unrelated)
    assert len(sig.laurent_blocks) == len(facts.cycles)
    if facts.is_acyclic:
        assert sig.laurent_blocks == ()
    if not facts.sinks and set(facts.regular_vertices) <= obj.s_set:
        assert sig.field_blocks == ()


@settings(max_examples=40, deadline=None)
@given(obj=small_objects())
def test_vertex_sum_acts_as_identity(obj):
    ctx = AlgebraContext(obj)
    one = ctx.unit()
    for v in sorted(obj.graph.vertices):
        assert one * ctx.vertex(v) == ctx.vertex(v)
    for e in sorted(obj.graph.edge_ids()):
        assert ctx.edge(e) * one == ctx.edge(e)
        assert (ctx.ghost(e) * one).star() == ctx.edge(e)
