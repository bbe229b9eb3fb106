"""Exact element arithmetic in the Cohn-Leavitt algebra of a finite object.

Elements are scalar combinations of monomials p|q (meaning p q* for paths
p, q with a common range).  A terminating rewriting system reduces every
combination to a canonical normal form: the monomial p|q is *irreducible*
unless p and q are both nonempty and both end in the distinguished special
edge of a vertex of S, in which case one application of the full relation
at that vertex replaces it by a strictly smaller combination.

The special edge of each S-vertex is the lexicographically smallest edge it
emits; the choice is recorded in the context so normal forms are
reproducible.  That irreducible monomials are linearly independent is a
standard fact imported from the structure theory of these algebras; this
package certifies it empirically through the representation checks in
:mod:`clpa.classify`.

All values are immutable and all operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import ContextMismatch, IncompleteMap, NonFiniteEnumeration
from .graphs import CLObject, Graph, Path, relative_graph
from .scalars import QQ, Field, Scalar, field_of, involve


@dataclass(frozen=True)
class Monomial:
    """The product p q* of two paths with r(p) = r(q)."""

    left: Path
    right: Path

    @property
    def degree(self) -> int:
        return len(self.left) - len(self.right)

    @property
    def bilength(self) -> int:
        return len(self.left) + len(self.right)

    def star(self) -> "Monomial":
        return Monomial(self.right, self.left)

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())

    def __str__(self):
        if self.right.is_trivial:
            return str(self.left)
        return f"{self.left}|{self.right}"


@dataclass(frozen=True)
class AlgebraContext:
    """A Cohn-Leavitt algebra: the object (E, S), the field, and the special edges."""

    obj: CLObject
    field: Field = QQ
    special: tuple = ()

    def __post_init__(self):
        chosen = tuple(
            (v, min(self.obj.graph.out_edges(v))) for v in sorted(self.obj.s_set)
        )
        object.__setattr__(self, "special", chosen)

    @property
    def graph(self) -> Graph:
        return self.obj.graph

    def special_edge(self, v: str) -> Optional[str]:
        for w, e in self.special:
            if w == v:
                return e
        return None

    # -- element constructors ------------------------------------------------

    def validate_path(self, p: Path) -> Path:
        g = self.graph
        if p.source not in g.vertices:
            raise ValueError(f"unknown vertex {p.source!r}")
        at = p.source
        for e in p.edges:
            if not g.has_edge(e) or g.src(e) != at:
                raise ValueError(f"invalid path {p}: edge {e!r} does not continue it")
            at = g.rng(e)
        return p

    def monomial(self, p: Path, q: Path, coeff: Optional[Scalar] = None) -> "AlgebraElement":
        self.validate_path(p)
        self.validate_path(q)
        g = self.graph
        if g.path_range(p) != g.path_range(q):
            raise ValueError(f"paths {p} and {q} have different ranges")
        c = self.field.one if coeff is None else coeff
        return self.from_raw([(c, Monomial(p, q))])

    def vertex(self, v: str) -> "AlgebraElement":
        return self.monomial(Path(v), Path(v))

    def edge(self, e: str) -> "AlgebraElement":
        g = self.graph
        return self.monomial(g.make_path([e]), Path(g.rng(e)))

    def ghost(self, e: str) -> "AlgebraElement":
        g = self.graph
        return self.monomial(Path(g.rng(e)), g.make_path([e]))

    def path_element(self, edge_ids: Iterable[str]) -> "AlgebraElement":
        p = self.graph.make_path(edge_ids)
        return self.monomial(p, Path(self.graph.path_range(p)))

    def zero_element(self) -> "AlgebraElement":
        return AlgebraElement(self, ())

    def unit(self) -> "AlgebraElement":
        """The identity: the sum of all vertices (the graph is finite)."""
        return self.from_raw(
            [(self.field.one, Monomial(Path(v), Path(v))) for v in self.graph.vertices]
        )

    def from_raw(self, terms: Iterable[tuple]) -> "AlgebraElement":
        """Normal form of a raw combination of (coefficient, monomial) pairs."""
        out: dict = {}
        stack = [(m, c) for c, m in terms]
        while stack:
            m, c = stack.pop()
            if not c:
                continue
            v = self._reducible_at(m)
            if v is None:
                acc = out.get(m, self.field.zero) + c
                if acc:
                    out[m] = acc
                elif m in out:
                    del out[m]
                continue
            p, q = m.left, m.right
            p1 = Path(p.source, p.edges[:-1])
            q1 = Path(q.source, q.edges[:-1])
            stack.append((Monomial(p1, q1), c))
            gamma = p.edges[-1]
            for e in self.graph.out_edges(v):
                if e != gamma:
                    stack.append(
                        (Monomial(Path(p1.source, p1.edges + (e,)),
                                  Path(q1.source, q1.edges + (e,))), -c)
                    )
        return AlgebraElement(self, tuple(sorted(out.items(), key=lambda t: t[0].sort_key())))

    def _reducible_at(self, m: Monomial) -> Optional[str]:
        # reducible iff p and q both end in the special edge of an S-vertex
        if not m.left.edges or not m.right.edges:
            return None
        last = m.left.edges[-1]
        if m.right.edges[-1] != last:
            return None
        v = self.graph.src(last)
        if self.special_edge(v) == last:
            return v
        return None

    def is_normal(self, m: Monomial) -> bool:
        return self._reducible_at(m) is None


def _mono_product(graph: Graph, a: Monomial, b: Monomial) -> Optional[Monomial]:
    # (p q*)(r s*): nonzero iff q is a prefix of r or r is a prefix of q
    q, r = a.right, b.left
    if q.source != r.source:
        return None
    lq, lr = len(q), len(r)
    if lq <= lr and r.edges[:lq] == q.edges:
        tail = Path(graph.path_range(q), r.edges[lq:])
        return Monomial(graph.compose(a.left, tail), b.right)
    if q.edges[:lr] == r.edges:
        tail = Path(graph.path_range(r), q.edges[lr:])
        return Monomial(a.left, graph.compose(b.right, tail))
    return None


@dataclass(frozen=True)
class AlgebraElement:
    """An element in canonical normal form: sorted (monomial, coefficient) terms."""

    ctx: AlgebraContext
    terms: tuple

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch("elements live in different algebra contexts")

    def coeff(self, m: Monomial) -> Scalar:
        for mono, c in self.terms:
            if mono == m:
                return c
        return self.ctx.field.zero

    def monomials(self) -> tuple:
        return tuple(m for m, _ in self.terms)

    def __add__(self, other):
        self._check(other)
        return self.ctx.from_raw(
            [(c, m) for m, c in self.terms] + [(c, m) for m, c in other.terms]
        )

    def __sub__(self, other):
        self._check(other)
        return self.ctx.from_raw(
            [(c, m) for m, c in self.terms] + [(-c, m) for m, c in other.terms]
        )

    def __neg__(self):
        return AlgebraElement(self.ctx, tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other):
        self._check(other)
        graph = self.ctx.graph
        raw = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                prod = _mono_product(graph, m1, m2)
                if prod is not None:
                    raw.append((c1 * c2, prod))
        return self.ctx.from_raw(raw)

    def scale(self, a: Scalar) -> "AlgebraElement":
        if field_of(a) != self.ctx.field:
            raise ContextMismatch(f"scalar field {field_of(a)!r} vs {self.ctx.field!r}")
        if not a:
            return self.ctx.zero_element()
        return AlgebraElement(self.ctx, tuple((m, a * c) for m, c in self.terms))

    def star(self) -> "AlgebraElement":
        """The involution: termwise swap of p and q with coefficient involution."""
        return self.ctx.from_raw([(involve(c), m.star()) for m, c in self.terms])

    def is_zero(self) -> bool:
        return not self.terms

    def zero(self) -> "AlgebraElement":
        return self.ctx.zero_element()

    def degree_components(self) -> dict:
        out: dict = {}
        for m, c in self.terms:
            out.setdefault(m.degree, []).append((m, c))
        return {
            d: AlgebraElement(self.ctx, tuple(parts)) for d, parts in sorted(out.items())
        }

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {m.degree for m, _ in self.terms}
        if degree is None:
            return len(degrees) <= 1
        return degrees <= {degree}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        one = self.ctx.field.one
        for m, c in self.terms:
            parts.append(str(m) if c == one else f"{c} * {m}")
        return " + ".join(parts)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def normal_form(ctx: AlgebraContext, raw: Iterable[tuple]) -> AlgebraElement:
    """Normal form of a raw (coefficient, monomial) combination."""
    return ctx.from_raw(raw)


def involution(a: AlgebraElement) -> AlgebraElement:
    return a.star()


def homogeneous_components(a: AlgebraElement) -> dict:
    return a.degree_components()


def is_idempotent(x: AlgebraElement) -> bool:
    return x * x == x


def are_orthogonal(x: AlgebraElement, y: AlgebraElement) -> bool:
    return (x * y).is_zero() and (y * x).is_zero()


# -- path and monomial enumeration (desk scale) ------------------------------


def all_paths(graph: Graph, max_length: Optional[int] = None) -> list:
    """Every path of the graph up to ``max_length`` (unbounded needs acyclicity)."""
    from .graphs import find_cycles

    if max_length is None:
        if find_cycles(graph):
            raise NonFiniteEnumeration("graph has cycles; pass max_length")
        max_length = len(graph.vertices)
    out = [Path(v) for v in sorted(graph.vertices)]
    frontier = list(out)
    for _ in range(max_length):
        nxt = []
        for p in frontier:
            for e in graph.out_edges(graph.path_range(p)):
                nxt.append(Path(p.source, p.edges + (e,)))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    out.sort(key=Path.sort_key)
    return out


def normal_monomials(
    ctx: AlgebraContext,
    max_each: Optional[int] = None,
    max_bilength: Optional[int] = None,
) -> list:
    """All normal-form monomials within the given length bounds."""
    if max_each is None and max_bilength is None:
        bound = None
    else:
        bound = max_each if max_each is not None else max_bilength
    paths = all_paths(ctx.graph, bound)
    by_range: dict = {}
    for p in paths:
        by_range.setdefault(ctx.graph.path_range(p), []).append(p)
    out = []
    for _, group in sorted(by_range.items()):
        for p in group:
            for q in group:
                m = Monomial(p, q)
                if max_bilength is not None and m.bilength > max_bilength:
                    continue
                if ctx.is_normal(m):
                    out.append(m)
    out.sort(key=Monomial.sort_key)
    return out


# -- generator maps ----------------------------------------------------------


@dataclass(frozen=True)
class GeneratorMapReport:
    """Outcome of checking a generator assignment against the algebra axioms."""

    failures: tuple
    degree_failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures and not self.degree_failures


def _eval_path(p: Path, images: Mapping):
    if p.is_trivial:
        return images[p.source]
    acc = images[p.edges[0]]
    for e in p.edges[1:]:
        acc = acc * images[e]
    return acc


def evaluate_monomial(m: Monomial, images: Mapping):
    left = _eval_path(m.left, images)
    if m.right.is_trivial:
        return left
    return left * _eval_path(m.right, images).star()


def evaluate_element(x: AlgebraElement, images: Mapping):
    """Push an algebra element through a generator assignment.

    The images must form a *-algebra in the element protocol sense: they
    support ``+ - *``, ``star()``, ``scale(a)``, ``is_zero()``, ``zero()``
    and ``degree_components()``.
    """
    total = None
    for m, c in x.terms:
        term = evaluate_monomial(m, images).scale(c)
        total = term if total is None else total + term
    if total is None:
        return next(iter(images.values())).zero()
    return total


def check_generator_map(
    obj: CLObject, images: Mapping, check_degrees: bool = True
) -> GeneratorMapReport:
    """Evaluate every axiom instance of the object at the given images.

    ``images`` maps every vertex id and edge id to a target element; ghost
    images are the involutions of the edge images.  An empty failure list
    certifies a *-homomorphism on generators.  The degree check demands each
    vertex image be homogeneous of degree 0 and each edge image of degree 1.
    """
    g = obj.graph
    missing = [x for x in sorted(g.vertices) + sorted(g.edge_ids()) if x not in images]
    if missing:
        raise IncompleteMap(f"no image given for: {missing}")

    failures = []

    def expect_zero(label: str, value):
        if not value.is_zero():
            failures.append(f"{label} is nonzero: {value}")

    def expect_equal(label: str, got, want):
        if not (got - want).is_zero():
            failures.append(f"{label}: {got} != {want}")

    verts = sorted(g.vertices)
    for v in verts:
        for w in verts:
            prod = images[v] * images[w]
            if v == w:
                expect_equal(f"(V) {v}*{v}={v}", prod, images[v])
            else:
                expect_zero(f"(V) {v}*{w}=0", prod)
    for e in sorted(g.edge_ids()):
        img, ghost = images[e], images[e].star()
        expect_equal(f"(E1) s({e}){e}={e}", images[g.src(e)] * img, img)
        expect_equal(f"(E1) {e}r({e})={e}", img * images[g.rng(e)], img)
        expect_equal(f"(E2) r({e}){e}*={e}*", images[g.rng(e)] * ghost, ghost)
        expect_equal(f"(E2) {e}*s({e})={e}*", ghost * images[g.src(e)], ghost)
    for e in sorted(g.edge_ids()):
        for f in sorted(g.edge_ids()):
            prod = images[e].star() * images[f]
            if e == f:
                expect_equal(f"(CK1) {e}*{e}=r({e})", prod, images[g.rng(e)])
            else:
                expect_zero(f"(CK1) {e}*{f}=0", prod)
    for v in sorted(obj.s_set):
        acc = None
        for e in g.out_edges(v):
            term = images[e] * images[e].star()
            acc = term if acc is None else acc + term
        expect_equal(f"(SCK2) {v}=sum ee*", acc, images[v])

    degree_failures = []
    if check_degrees:
        for v in verts:
            if not set(images[v].degree_components()) <= {0}:
                degree_failures.append(f"vertex {v}: image not homogeneous of degree 0")
        for e in sorted(g.edge_ids()):
            if not set(images[e].degree_components()) <= {1}:
                degree_failures.append(f"edge {e}: image not homogeneous of degree 1")

    return GeneratorMapReport(tuple(failures), tuple(degree_failures))


# -- the relative graph's generator images ------------------------------------


def relative_generator_images(
    obj: CLObject, field: Field = QQ
) -> tuple:
    """The relative graph of (E, S) plus its canonical generator images.

    Returns ``(rel, ctx, images)`` where ``images`` assigns to every vertex
    and edge of the relative graph an element of the Cohn-Leavitt algebra of
    (E, S): ordinary vertices map to themselves or to their full-relation
    expansion, each new primed sink v' to v minus that expansion, and edges
    map to themselves corrected on the right by the image of their range.
    """
    rel = relative_graph(obj)
    ctx = AlgebraContext(obj, field)
    g = obj.graph
    unprimed = sorted(rel.primed_vertex)
    images: dict = {}

    def expansion(v: str) -> AlgebraElement:
        return ctx.from_raw(
            [
                (ctx.field.one, Monomial(g.make_path([e]), g.make_path([e])))
                for e in g.out_edges(v)
            ]
        )

    for v in sorted(g.vertices):
        images[v] = expansion(v) if v in unprimed else ctx.vertex(v)
    for v in unprimed:
        images[rel.primed_vertex[v]] = ctx.vertex(v) - expansion(v)
    for e in sorted(g.edge_ids()):
        images[e] = ctx.edge(e) * images[g.rng(e)]
        if e in rel.primed_edge:
            images[rel.primed_edge[e]] = ctx.edge(e) * images[rel.primed_vertex[g.rng(e)]]
    return rel, ctx, images
