"""Normal forms, lattice operations and conjugacy tools in a Garside groupoid.

A morphism is stored as its left-weighted normal form ``Delta^k s_1 ... s_r``
(source object, ``k`` and the tuple of proper simples), so equality of values
is equality of morphisms.  Everything reduces to the simple-level tables of
:class:`~springer_garside.springer.GroupoidData`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .springer import GroupoidData


class ContractError(ValueError):
    """An operation was called outside its precondition."""


@dataclass(frozen=True, order=True)
class Morphism:
    """Left-weighted normal form ``Delta(source)^k`` followed by ``factors``."""

    source: int
    k: int
    factors: tuple[int, ...]

    @property
    def inf(self) -> int:
        return self.k

    @property
    def sup(self) -> int:
        return self.k + len(self.factors)

    @property
    def is_positive(self) -> bool:
        return self.k >= 0

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


NormalForm = Morphism


@dataclass(frozen=True)
class Fraction:
    """``den^-1 num`` with ``den`` and ``num`` positive, same source, coprime."""

    den: Morphism
    num: Morphism


@dataclass
class ConjugacyGraph:
    vertices: list[Morphism]
    edges: list[tuple[int, Morphism, int]] = field(default_factory=list)


@dataclass(frozen=True)
class RecurrentOrbit:
    conjugator: Morphism
    recurrent: Morphism
    cycle: tuple[Morphism, ...]


class Garside:
    """Morphism arithmetic over a fixed :class:`GroupoidData`."""

    def __init__(self, data: GroupoidData):
        self.data = data
        d = data
        order = 1
        for s in range(d.n_simples):
            t, k = d.phi[s], 1
            while t != s:
                t, k = d.phi[t], k + 1
            order = math.lcm(order, k)
        self.phi_order = order
        tabs = [list(range(d.n_simples))]
        for _ in range(order - 1):
            tabs.append([d.phi[x] for x in tabs[-1]])
        self._phi_tabs = tabs
        otabs = [list(range(d.n_objects))]
        for _ in range(order - 1):
            otabs.append([d.phi_obj[x] for x in otabs[-1]])
        self._phi_obj_tabs = otabs

    # ---------------------------------------------------------------- basics

    def phi_s(self, s: int, m: int = 1) -> int:
        return self._phi_tabs[m % self.phi_order][s]

    def phi_o(self, u: int, m: int = 1) -> int:
        return self._phi_obj_tabs[m % self.phi_order][u]

    def identity(self, u: int) -> Morphism:
        return Morphism(u, 0, ())

    def delta(self, u: int, k: int = 1) -> Morphism:
        return Morphism(u, k, ())

    def simple(self, s: int) -> Morphism:
        d = self.data
        if d.is_identity(s):
            return self.identity(d.src[s])
        if d.is_delta(s):
            return self.delta(d.src[s])
        return Morphism(d.src[s], 0, (s,))

    def target(self, f: Morphism) -> int:
        if f.factors:
            return self.data.tgt[f.factors[-1]]
        return self.phi_o(f.source, f.k)

    def is_identity(self, f: Morphism) -> bool:
        return f.k == 0 and not f.factors

    def is_endo(self, f: Morphism) -> bool:
        return self.target(f) == f.source

    def length(self, f: Morphism) -> int:
        """Length in the homogeneous sense (sum of simple lengths)."""
        d = self.data
        dl = d.length[d.delta_of[f.source]]
        return f.k * dl + sum(d.length[s] for s in f.factors)

    def simples_of(self, f: Morphism) -> list[int]:
        """The positive word ``Delta ... Delta s_1 ... s_r`` (requires ``k >= 0``)."""
        if f.k < 0:
            raise ContractError("morphism is not positive")
        out = [self.data.delta_of[self.phi_o(f.source, i)] for i in range(f.k)]
        return out + list(f.factors)

    def head(self, f: Morphism) -> int:
        """Largest simple prefix of a positive morphism."""
        if f.k > 0:
            return self.data.delta_of[f.source]
        if f.factors:
            return f.factors[0]
        return self.data.ident_of[f.source]

    # ---------------------------------------------------------------- normal forms

    def _append(self, k: int, factors: list[int], s: int) -> tuple[int, list[int]]:
        d = self.data
        if d.is_identity(s):
            return k, factors
        factors.append(s)
        i = len(factors) - 2
        while i >= 0:
            left, right = factors[i], factors[i + 1]
            m = d.meet(right, d.bar(left))
            if d.is_identity(m):
                break
            factors[i] = d.compose(left, m)
            factors[i + 1] = d.rquot(m, right)
            i -= 1
        while factors and d.is_delta(factors[0]):
            factors.pop(0)
            k += 1
        while factors and d.is_identity(factors[-1]):
            factors.pop()
        return k, factors

    def from_simples(self, u: int, word: Iterable[int]) -> Morphism:
        """Normal form of a composable positive word of simples starting at ``u``."""
        d = self.data
        k, factors, cur = 0, [], u
        for pos, s in enumerate(word):
            if d.src[s] != cur:
                raise ContractError(f"word is not composable at position {pos + 1}")
            cur = d.tgt[s]
            k, factors = self._append(k, factors, s)
        return Morphism(u, k, tuple(factors))

    def normal_form(self, word: Sequence[int], source: int | None = None) -> Morphism:
        if not word and source is None:
            raise ContractError("empty word needs an explicit source")
        u = self.data.src[word[0]] if word else source
        return self.from_simples(u, word)

    def mul(self, f: Morphism, g: Morphism) -> Morphism:
        if self.target(f) != g.source:
            raise ContractError("morphisms are not composable")
        # Delta^k S Delta^m T = Delta^(k+m) phi^m(S) T
        m = g.k
        k = f.k + m
        factors = [self.phi_s(s, m) for s in f.factors]
        for t in g.factors:
            k, factors = self._append(k, factors, t)
        return Morphism(f.source, k, tuple(factors))

    def product(self, *fs: Morphism) -> Morphism:
        out = fs[0]
        for g in fs[1:]:
            out = self.mul(out, g)
        return out

    def simple_inverse(self, s: int) -> Morphism:
        """``s^-1 = Delta^-1 phi^-1(bar s)``."""
        d = self.data
        t = self.phi_s(d.bar(s), -1)
        return self.mul(self.delta(self.phi_o(d.src[t], 1), -1), self.simple(t))

    def inv(self, f: Morphism) -> Morphism:
        tgt = self.target(f)
        out = self.identity(tgt)
        for s in reversed(f.factors):
            out = self.mul(out, self.simple_inverse(s))
        # Delta(u)^k inverse runs from phi^k(u) back to u
        return self.mul(out, self.delta(self.phi_o(f.source, f.k), -f.k))

    def power(self, f: Morphism, m: int) -> Morphism:
        if not self.is_endo(f):
            raise ContractError("powers need an endomorphism")
        base = f if m >= 0 else self.inv(f)
        out = self.identity(f.source)
        for _ in range(abs(m)):
            out = self.mul(out, base)
        return out

    def conj(self, x: Morphism, c: Morphism) -> Morphism:
        """``x^c = c^-1 x c``."""
        return self.product(self.inv(c), x, c)

    def from_signed_word(self, word: Sequence[tuple[int, int]], source: int | None = None) -> Morphism:
        """Morphism from ``[(simple, +1 | -1), ...]``."""
        out = None
        for pos, (s, e) in enumerate(word):
            piece = self.simple(s) if e > 0 else self.simple_inverse(s)
            if out is None:
                out = piece
            elif self.target(out) != piece.source:
                raise ContractError(f"word is not composable at position {pos + 1}")
            else:
                out = self.mul(out, piece)
        if out is None:
            if source is None:
                raise ContractError("empty word needs an explicit source")
            return self.identity(source)
        return out

    def left_divide_simple(self, s: int, f: Morphism) -> Morphism:
        """``s^-1 f``."""
        return self.mul(self.simple_inverse(s), f)

    # ---------------------------------------------------------------- lattices

    def pos_meet(self, a: Morphism, b: Morphism) -> Morphism:
        self._positive_pair(a, b)
        d = self.data
        source = a.source
        parts: list[int] = []
        while True:
            m = d.meet(self.head(a), self.head(b))
            if d.is_identity(m):
                break
            parts.append(m)
            a, b = self.left_divide_simple(m, a), self.left_divide_simple(m, b)
        return self.from_simples(source, parts)

    def _positive_pair(self, a: Morphism, b: Morphism) -> None:
        if a.source != b.source:
            raise ContractError("morphisms have different sources")
        if a.k < 0 or b.k < 0:
            raise ContractError("positive morphisms expected")

    def _row(self, s: int, word: list[int]) -> tuple[list[int], int]:
        """Walk simple ``s`` across ``word``: returns (``s\\word``, ``word\\s``)."""
        d = self.data
        out = []
        v = s
        for t in word:
            out.append(d.complement(v, t))
            v = d.complement(t, v)
        return out, v

    def word_complement(self, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
        """``(a\\b, b\\a)`` for positive words with a common source."""
        cur = list(b)
        other: list[int] = []
        for s in a:
            cur, fin = self._row(s, cur)
            other.append(fin)
        return cur, other

    def right_complement(self, a: Morphism, b: Morphism) -> Morphism:
        """``a\\b``: the positive ``x`` with ``a x = a v b``."""
        self._positive_pair(a, b)
        res, _ = self.word_complement(self.simples_of(a), self.simples_of(b))
        return self.from_simples(self.target(a), res)

    def pos_join(self, a: Morphism, b: Morphism) -> Morphism:
        return self.mul(a, self.right_complement(a, b))

    def divides(self, a: Morphism, b: Morphism) -> bool:
        """Prefix order on morphisms with a common source."""
        if a.source != b.source:
            raise ContractError("morphisms have different sources")
        return self.mul(self.inv(a), b).k >= 0

    def left_divides(self, a: Morphism, b: Morphism) -> bool:
        """``a`` is a suffix of ``b``."""
        if self.target(a) != self.target(b):
            raise ContractError("morphisms have different targets")
        return self.mul(b, self.inv(a)).k >= 0

    def _dual_top(self, a: Morphism, b: Morphism, n: int) -> Morphism:
        v = self.target(a)
        if v != self.target(b):
            raise ContractError("morphisms have different targets")
        return self.delta(self.phi_o(v, -n), n)

    def left_meet(self, a: Morphism, b: Morphism) -> Morphism:
        top = self._dual_top(a, b, max(a.sup, b.sup, 0))
        x, y = self.mul(top, self.inv(a)), self.mul(top, self.inv(b))
        return self.mul(self.inv(self.pos_join(x, y)), top)

    def left_join(self, a: Morphism, b: Morphism) -> Morphism:
        top = self._dual_top(a, b, max(a.sup, 0) + max(b.sup, 0))
        x, y = self.mul(top, self.inv(a)), self.mul(top, self.inv(b))
        return self.mul(self.inv(self.pos_meet(x, y)), top)

    # ---------------------------------------------------------------- fractions

    def reduce_fraction(self, a: Morphism, b: Morphism) -> Fraction:
        self._positive_pair(a, b)
        m = self.pos_meet(a, b)
        mi = self.inv(m)
        return Fraction(self.mul(mi, a), self.mul(mi, b))

    def fraction(self, f: Morphism) -> Fraction:
        if f.k >= 0:
            return Fraction(self.identity(f.source), f)
        u = self.phi_o(f.source, f.k)
        den = self.delta(u, -f.k)
        num = Morphism(u, 0, f.factors)
        return self.reduce_fraction(den, num)

    def from_fraction(self, fr: Fraction) -> Morphism:
        return self.mul(self.inv(fr.den), fr.num)

    # ---------------------------------------------------------------- swap and recurrence

    def swap(self, x: Morphism) -> Morphism:
        """``sw(f^-1 g) = g f^-1``."""
        if not self.is_endo(x):
            raise ContractError("swap needs an endomorphism")
        fr = self.fraction(x)
        return self.mul(fr.num, self.inv(fr.den))

    def recurrent_orbit(self, x: Morphism, cap: int | None = None) -> RecurrentOrbit:
        if not self.is_endo(x):
            raise ContractError("swap needs an endomorphism")
        if cap is None:
            cap = 10 * (x.sup - min(x.inf, 0) + 1) * self.data.n_simples
        seen: dict[Morphism, int] = {}
        chain: list[Morphism] = []
        conjs: list[Morphism] = []
        y, conj = x, self.identity(x.source)
        for _ in range(cap):
            if y in seen:
                j = seen[y]
                return RecurrentOrbit(conjs[j], chain[j], tuple(chain[j:]))
            seen[y] = len(chain)
            chain.append(y)
            conjs.append(conj)
            den = self.fraction(y).den
            conj = self.mul(conj, self.inv(den))
            y = self.swap(y)
        raise RuntimeError("swap orbit exceeded the iteration cap")

    def is_recurrent(self, x: Morphism) -> bool:
        return x in self.recurrent_orbit(x).cycle

    def transport(self, y: Morphism, alpha: Morphism, z: Morphism) -> Morphism:
        if alpha.k < 0:
            raise ContractError("conjugator must be positive")
        if self.conj(y, alpha) != z:
            raise ContractError("alpha does not conjugate y to z")
        fy, fz = self.fraction(y), self.fraction(z)
        a1 = self.product(fy.den, alpha, self.inv(fz.den))
        a2 = self.product(fy.num, alpha, self.inv(fz.num))
        if a1 != a2 or a1.k < 0 or self.conj(self.swap(y), a1) != self.swap(z):
            raise AssertionError("transport identity failed")
        return a1

    # ---------------------------------------------------------------- positive conjugators

    def _endo_complement(self, x: Morphism, s: int) -> int:
        """``x \\ s`` for positive ``x`` and simple ``s`` at its source (a simple)."""
        v = s
        d = self.data
        for t in self.simples_of(x):
            v = d.complement(t, v)
        return v

    def rho(self, a: int, x: Morphism, trace: list[int] | None = None) -> int:
        """Smallest simple ``c`` above atom ``a`` with ``x^c`` positive."""
        d = self.data
        if x.k < 0 or not self.is_endo(x):
            raise ContractError("rho needs a positive endomorphism")
        if d.src[a] != x.source:
            raise ContractError("atom is not at the source of x")
        c = a
        while True:
            pre = self._endo_complement(x, c)
            if trace is not None:
                trace.append(pre)
            nxt = d.join(c, pre)
            if nxt == c:
                return c
            c = nxt

    def minimal_positive_conjugators(self, x: Morphism) -> list[int]:
        d = self.data
        cands = sorted({self.rho(a, x) for a in d.atoms_of[x.source]})
        return [c for c in cands if not any(o != c and d.divides(o, c) for o in cands)]

    def positive_conjugates_graph(self, x: Morphism, limit: int | None = None) -> ConjugacyGraph:
        if x.k < 0:
            x = self.recurrent_orbit(x).recurrent
            if x.k < 0:
                raise ContractError("x is not conjugate to a positive morphism")
        index = {x: 0}
        graph = ConjugacyGraph([x])
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for rho in self.minimal_positive_conjugators(y):
                z = self.conj(y, self.simple(rho))
                if z not in index:
                    index[z] = len(graph.vertices)
                    graph.vertices.append(z)
                    queue.append(z)
                    if limit is not None and len(graph.vertices) > limit:
                        raise RuntimeError("conjugacy graph exceeded the vertex limit")
                graph.edges.append((index[y], self.simple(rho), index[z]))
        return graph


def positive_word(g: Garside, f: Morphism) -> list[int]:
    return g.simples_of(f)
