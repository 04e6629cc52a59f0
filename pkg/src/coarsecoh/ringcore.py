"""Multigraded polynomial rings over Q and finitely presented graded modules.

Conventions fixed here and used everywhere else:

* monomials are exponent tuples, one entry per variable;
* the shift M(g) satisfies  M(g)_d = M_{g+d},  so a free module with a
  generator in degree d is R(-d) and its degree-g component has basis the
  monomials of degree g - d;
* every ring carries a positivity certificate: a rational weight vector w
  with  w . (free part of deg x_i) > 0  for each variable.  This makes
  every graded component finite dimensional and effectively enumerable,
  at any degree, so windows only scope output, never computability.

Components of a finitely presented module are computed as explicit
quotient spaces: monomial basis of the free cover in that degree, modulo
the row reduced relation image.  The chosen basis (unreduced monomial
labels outside the pivot set) is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import HomogeneityError
from .grading import Degree, DegreeGroup, DegreeWindow
from .linalg import Mat, Q0, Q1, frac, reduce_against, rref

Monomial = tuple  # of int exponents


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, requiring divisibility."""
    if not mono_divides(b, a):
        raise ValueError("monomial %r does not divide %r" % (b, a))
    return tuple(x - y for x, y in zip(a, b))


class Poly:
    """Polynomial with rational coefficients, stored as monomial -> coeff."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in dict(terms).items():
                c = frac(c)
                if c:
                    self.terms[tuple(m)] = c

    @staticmethod
    def monomial(m: Monomial, c=1) -> "Poly":
        return Poly({tuple(m): frac(c)})

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    def is_zero(self) -> bool:
        return not self.terms

    def items_sorted(self):
        return sorted(self.terms.items())

    def key(self):
        return tuple(self.items_sorted())

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Q0) + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scaled(self, c) -> "Poly":
        c = frac(c)
        return Poly({m: c * x for m, x in self.terms.items()})

    def times_monomial(self, m: Monomial, c=1) -> "Poly":
        c = frac(c)
        return Poly({mono_mul(t, tuple(m)): c * x for t, x in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, Q0) + c1 * c2
        return Poly(out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Poly(%r)" % (self.terms,)


class GradedPolynomialRing:
    """K[x_1..x_n] graded by a degree group, with a positivity certificate."""

    def __init__(
        self,
        group: DegreeGroup,
        var_names,
        var_degrees,
        certificate,
    ):
        self.group = group
        self.var_names = tuple(var_names)
        self.var_degrees = tuple(var_degrees)
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("variable names must be distinct")
        for d in self.var_degrees:
            if d.group != group:
                raise ValueError("variable degree outside the grading group")
        if len(self.var_degrees) != len(self.var_names):
            raise ValueError("need one degree per variable")
        self.certificate = tuple(frac(c) for c in certificate)
        if len(self.certificate) != group.free_rank:
            raise ValueError("certificate length must equal the free rank")
        for name, d in zip(self.var_names, self.var_degrees):
            if self.weight_of(d) <= 0:
                raise ValueError(
                    "certificate fails positivity on variable %s of degree %s"
                    % (name, d)
                )
        self._mono_cache: dict[Degree, tuple[Monomial, ...]] = {}

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def weight_of(self, d: Degree) -> Fraction:
        return sum((c * f for c, f in zip(self.certificate, d.free)), Q0)

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def mono(self, **powers) -> Monomial:
        e = [0] * self.nvars
        for name, p in powers.items():
            e[self.var_names.index(name)] = int(p)
        return tuple(e)

    def monomial_degree(self, m: Monomial) -> Degree:
        d = self.group.zero()
        for e, vd in zip(m, self.var_degrees):
            if e:
                d = d + vd.scale(e)
        return d

    def poly_degree(self, p: Poly) -> Degree | None:
        """Common degree of all terms, None for the zero polynomial."""
        degs = {self.monomial_degree(m) for m in p.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(
                "polynomial mixes degrees %s"
                % ", ".join(sorted(str(d) for d in degs))
            )
        return degs.pop()

    def monomials_of_degree(self, g: Degree) -> tuple[Monomial, ...]:
        """All monomials of exact degree g, in lexicographic exponent order."""
        if g.group != self.group:
            raise ValueError("degree outside the grading group")
        cached = self._mono_cache.get(g)
        if cached is not None:
            return cached
        weights = [self.weight_of(d) for d in self.var_degrees]
        out: list[Monomial] = []
        exps = [0] * self.nvars

        def descend(i: int, remaining: Degree, budget: Fraction):
            if budget < 0:
                return
            if i == self.nvars:
                if remaining.is_zero():
                    out.append(tuple(exps))
                return
            w = weights[i]
            top = int(budget / w)
            for e in range(top + 1):
                exps[i] = e
                rem = remaining - self.var_degrees[i].scale(e) if e else remaining
                descend(i + 1, rem, budget - w * e)
            exps[i] = 0

        descend(0, g, self.weight_of(g))
        result = tuple(sorted(out))
        self._mono_cache[g] = result
        return result

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.var_names, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def poly_str(self, p: Poly) -> str:
        if p.is_zero():
            return "0"
        chunks = []
        for m, c in p.items_sorted():
            ms = self.monomial_str(m)
            if c == 1 and any(m):
                chunks.append(ms)
            elif ms == "1":
                chunks.append(str(c))
            else:
                chunks.append("%s*%s" % (c, ms))
        return " + ".join(chunks)


class MonomialIdeal:
    """Ideal generated by monomials, stored by its minimal generators."""

    def __init__(self, ring: GradedPolynomialRing, gens):
        self.ring = ring
        gens = sorted({tuple(g) for g in gens})
        # a generator survives when no other generator divides it
        self.gens: tuple[Monomial, ...] = tuple(
            g for g in gens if not any(h != g and mono_divides(h, g) for h in gens)
        )

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring is other.ring
            and self.gens == other.gens
        )

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def contains_monomial(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def power(self, n: int) -> "MonomialIdeal":
        if n < 0:
            raise ValueError("nonnegative powers only")
        if n == 0:
            return MonomialIdeal(self.ring, [self.ring.one()])
        prods = set()
        for combo in itertools.combinations_with_replacement(self.gens, n):
            m = self.ring.one()
            for g in combo:
                m = mono_mul(m, g)
            prods.add(m)
        return MonomialIdeal(self.ring, prods)

    def gen_degrees(self) -> list[Degree]:
        return [self.ring.monomial_degree(g) for g in self.gens]

    def __repr__(self):
        return "MonomialIdeal(%s)" % ", ".join(
            self.ring.monomial_str(g) for g in self.gens
        )


@dataclass
class RelationColumn:
    """One column of a presentation matrix: homogeneous of `degree`,
    with polynomial entries keyed by generator index."""

    degree: Degree
    entries: dict[int, Poly]


class ComponentSpace:
    """Degree-g component of a finitely presented module, as a quotient
    of the monomial basis of the free cover by the relation image."""

    def __init__(self, module: "GradedModulePresentation", degree: Degree):
        self.module = module
        self.degree = degree
        ring = module.ring
        labels: list[tuple[int, Monomial]] = []
        for j, dj in enumerate(module.gen_degrees):
            for m in ring.monomials_of_degree(degree - dj):
                labels.append((j, m))
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        rel_vectors: list[list[Fraction]] = []
        for col in module.relations:
            for m in ring.monomials_of_degree(degree - col.degree):
                vec = [Q0] * n
                hit = False
                for j, p in col.entries.items():
                    shifted = p.times_monomial(m)
                    for t, c in shifted.terms.items():
                        vec[self._index[(j, t)]] += c
                        hit = True
                if hit:
                    rel_vectors.append(vec)
        self.rel_red, self.rel_piv = rref(rel_vectors, n)
        piv = set(self.rel_piv)
        self.basis_positions = [i for i in range(n) if i not in piv]
        self.basis_labels = [labels[i] for i in self.basis_positions]

    @property
    def ambient_dim(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.basis_positions)

    def index_of(self, label) -> int:
        return self._index[label]

    def reduce(self, f0_vec) -> list[Fraction]:
        """Quotient coordinates of an ambient free-cover vector."""
        res = reduce_against(self.rel_red, self.rel_piv, f0_vec)
        return [res[i] for i in self.basis_positions]

    def lift(self, coords) -> list[Fraction]:
        vec = [Q0] * self.ambient_dim
        for c, i in zip(coords, self.basis_positions):
            vec[i] = frac(c)
        return vec

    def basis_str(self) -> list[str]:
        ring = self.module.ring
        return [
            "g%d*%s" % (j, ring.monomial_str(m)) for j, m in self.basis_labels
        ]


class GradedModulePresentation:
    """Finitely presented graded module: free cover generator degrees plus
    homogeneous relation columns."""

    def __init__(self, ring: GradedPolynomialRing, gen_degrees, relations=()):
        self.ring = ring
        self.gen_degrees = tuple(gen_degrees)
        for d in self.gen_degrees:
            if d.group != ring.group:
                raise ValueError("generator degree outside the grading group")
        rels = []
        for k, col in enumerate(relations):
            entries = {}
            for j, p in col.entries.items():
                if not (0 <= j < len(self.gen_degrees)):
                    raise ValueError(
                        "relation %d hits generator %d, which does not exist"
                        % (k, j)
                    )
                if p.is_zero():
                    continue
                pd = ring.poly_degree(p)
                expected = col.degree - self.gen_degrees[j]
                if pd != expected:
                    raise HomogeneityError(
                        "relation %d, generator %d: entry has degree %s, "
                        "expected %s" % (k, j, pd, expected)
                    )
                entries[j] = p
            rels.append(RelationColumn(col.degree, entries))
        self.relations = tuple(rels)
        self._components: dict[Degree, ComponentSpace] = {}
        self._mult_cache: dict = {}

    @staticmethod
    def free(ring: GradedPolynomialRing, gen_degrees) -> "GradedModulePresentation":
        return GradedModulePresentation(ring, gen_degrees, ())

    @staticmethod
    def quotient_by_ideal(ideal: MonomialIdeal) -> "GradedModulePresentation":
        ring = ideal.ring
        cols = [
            RelationColumn(ring.monomial_degree(g), {0: Poly.monomial(g)})
            for g in ideal.gens
        ]
        return GradedModulePresentation(ring, [ring.group.zero()], cols)

    def component(self, g: Degree) -> ComponentSpace:
        comp = self._components.get(g)
        if comp is None:
            comp = ComponentSpace(self, g)
            self._components[g] = comp
        return comp

    def dim(self, g: Degree) -> int:
        return self.component(g).dim

    def hilbert(self, window: DegreeWindow) -> "HilbertTable":
        return HilbertTable(
            window,
            {g: self.component(g).dim for g in window},
            support_gens=self.gen_degrees,
        )

    def multiplication_matrix(self, f: Poly, g: Degree) -> Mat:
        """Matrix of multiplication by homogeneous f from M_g to M_{g+deg f},
        in the chosen component bases."""
        key = (f.key(), g)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        fd = self.ring.poly_degree(f)
        src = self.component(g)
        if fd is None:
            # multiplication by zero: conventionally a map to the zero space
            out = Mat.zero(0, src.dim)
            self._mult_cache[key] = out
            return out
        tgt = self.component(g + fd)
        cols = []
        for (j, m) in src.basis_labels:
            vec = [Q0] * tgt.ambient_dim
            for t, c in f.terms.items():
                vec[tgt.index_of((j, mono_mul(m, t)))] += c
            cols.append(tgt.reduce(vec))
        mat = Mat.from_columns(cols, tgt.dim)
        self._mult_cache[key] = mat
        return mat

    def shift(self, d: Degree) -> "GradedModulePresentation":
        """The shifted module M(d), with  M(d)_g = M_{g+d}."""
        return GradedModulePresentation(
            self.ring,
            [x - d for x in self.gen_degrees],
            [
                RelationColumn(col.degree - d, dict(col.entries))
                for col in self.relations
            ],
        )


class HilbertTable:
    """Per-degree dimensions over a window.

    `support_gens`, when present, lists generator degrees of a module that
    contains whatever the table measures; coarsening uses it to certify
    that fiber sums are finite.
    """

    def __init__(self, window: DegreeWindow, values: dict, support_gens=None):
        self.window = window
        self.values = {g: int(values[g]) for g in window}
        self.support_gens = tuple(support_gens) if support_gens is not None else None

    def get(self, d: Degree) -> int:
        if d not in self.window:
            raise KeyError("degree %s outside the tabulated window" % d)
        return self.values[d]

    def total(self) -> int:
        return sum(self.values.values())

    def __eq__(self, other):
        return (
            isinstance(other, HilbertTable)
            and self.window == other.window
            and self.values == other.values
        )

    def rows(self) -> list[tuple[str, int]]:
        return [(str(g), self.values[g]) for g in self.window]

    def __repr__(self):
        return "HilbertTable({%s})" % ", ".join(
            "%s: %d" % (g, v) for g, v in sorted(self.values.items(), key=lambda kv: kv[0].sort_key())
        )
