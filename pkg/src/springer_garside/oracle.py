"""Brute-force model of the dual braid monoid, computed inside the finite group.

Simples are the group elements ``x`` with ``l(x) + l(x^-1 c) = l(c)`` where
``l`` comes from a Cayley-graph BFS over all reflections.  Elements of the
groupoid are pairs ``(k, factors)`` meaning ``c^k x_1 ... x_r`` with ``c``
playing the part of Delta.  Normal forms are produced by local sliding between
neighbouring factors; meets and joins by greedy walks that only ask whether a
word is positive.  Nothing here touches the lattice tables of the main engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .garside import Garside, Morphism
from .reflection import RootSystem, enumerate_group, word_lengths

Element = tuple[int, tuple[int, ...]]  # (k, group indices of factors)


@dataclass
class DualMonoidOracle:
    system: RootSystem
    group: list = field(init=False, repr=False)

    def __post_init__(self) -> None:
        sys_ = self.system
        self.group = enumerate_group(sys_)
        self.pos = {x.key: i for i, x in enumerate(self.group)}
        lengths = word_lengths(sys_)
        self.len = [lengths[x.key] for x in self.group]
        n = len(self.group)
        self.mul_table = [[self.pos[(a * b).key] for b in self.group] for a in self.group]
        self.inv = [self.pos[x.inverse().key] for x in self.group]
        self.one = self.pos[sys_.identity.key]
        self.c = self.pos[sys_.coxeter_element.key]
        self.c_inv = self.inv[self.c]
        rank = self.len[self.c]
        self.rank = rank
        self.simples = [x for x in range(n) if self.len[x] + self.len[self.m(self.inv[x], self.c)] == rank]
        self.is_simple = set(self.simples)
        self.atoms = [x for x in self.simples if self.len[x] == 1]

    def m(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def prefix(self, t: int, y: int) -> bool:
        """``t`` is a length-additive prefix of ``y`` in the group."""
        return self.len[t] + self.len[self.m(self.inv[t], y)] == self.len[y]

    def conj_c(self, x: int) -> int:
        """``c x c^-1``: moves ``x`` leftwards across ``c^-1``."""
        return self.m(self.m(self.c, x), self.c_inv)

    def conj_c_inv(self, x: int) -> int:
        return self.m(self.m(self.c_inv, x), self.c)

    # ------------------------------------------------------------------ normal form

    def normalize(self, k: int, factors: list[int]) -> Element:
        fs = [x for x in factors if x != self.one]
        changed = True
        while changed:
            changed = False
            for i in range(len(fs) - 1):
                x, y = fs[i], fs[i + 1]
                best = self.one
                for t in self.simples:
                    if self.len[t] > self.len[best] and self.prefix(t, y):
                        xt = self.m(x, t)
                        if xt in self.is_simple and self.len[xt] == self.len[x] + self.len[t]:
                            best = t
                if best != self.one:
                    fs[i] = self.m(x, best)
                    fs[i + 1] = self.m(self.inv[best], y)
                    changed = True
            if changed:
                fs = [x for x in fs if x != self.one]
        while fs and fs[0] == self.c:
            fs.pop(0)
            k += 1
        return k, tuple(fs)

    def times_simple(self, e: Element, s: int) -> Element:
        k, fs = e
        return self.normalize(k, list(fs) + [s])

    def times_inverse(self, e: Element, s: int) -> Element:
        # s^-1 = c^-1 (c s^-1) and x c^-1 = c^-1 (c x c^-1)
        k, fs = e
        return self.normalize(k - 1, [self.conj_c(x) for x in fs] + [self.m(self.c, self.inv[s])])

    def word(self, letters: list[tuple[int, int]]) -> Element:
        e: Element = (0, ())
        for s, sign in letters:
            e = self.times_simple(e, s) if sign > 0 else self.times_inverse(e, s)
        return e

    def letters(self, e: Element) -> list[tuple[int, int]]:
        k, fs = e
        out = [(self.c, 1)] * k if k >= 0 else [(self.c, -1)] * (-k)
        return out + [(x, 1) for x in fs]

    def inverse_letters(self, e: Element) -> list[tuple[int, int]]:
        return [(s, -sign) for s, sign in reversed(self.letters(e))]

    def is_positive(self, e: Element) -> bool:
        return e[0] >= 0

    def left_quotient(self, a: Element, b: Element) -> Element:
        """``a^-1 b``."""
        return self.word(self.inverse_letters(a) + self.letters(b))

    def right_quotient(self, a: Element, b: Element) -> Element:
        """``a b^-1``."""
        return self.word(self.letters(a) + self.inverse_letters(b))

    # ------------------------------------------------------------------ lattice

    def divides(self, p: Element, a: Element) -> bool:
        return self.is_positive(self.left_quotient(p, a))

    def meet(self, a: Element, b: Element) -> Element:
        """Greedy climb: common divisors form an interval with a unique top."""
        p: Element = (0, ())
        grew = True
        while grew:
            grew = False
            for r in self.atoms:
                q = self.times_simple(p, r)
                if self.divides(q, a) and self.divides(q, b):
                    p, grew = q, True
                    break
        return p

    def join(self, a: Element, b: Element) -> Element:
        """Greedy descent from a power of ``c`` that both elements divide."""
        top = max(a[0] + len(a[1]), b[0] + len(b[1]), 0)
        M: Element = (top, ())
        shrunk = True
        while shrunk:
            shrunk = False
            for r in self.atoms:
                q = self.right_quotient(M, (0, (r,)))
                if self.is_positive(q) and self.divides(a, q) and self.divides(b, q):
                    M, shrunk = q, True
                    break
        return M

    def fraction(self, e: Element) -> tuple[Element, Element]:
        k, fs = e
        if k >= 0:
            return (0, ()), e
        den: Element = (-k, ())
        num: Element = (0, fs)
        m = self.meet(den, num)
        return self.left_quotient(m, den), self.left_quotient(m, num)


# ---------------------------------------------------------------------------- comparison


@dataclass
class OracleComparison:
    type_label: str
    normal_forms: int = 0
    meets: int = 0
    joins: int = 0
    fractions: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


class _Bridge:
    """Translation between engine simples and group indices (one-object case)."""

    def __init__(self, g: Garside, oracle: DualMonoidOracle):
        d = g.data
        if d.n_objects != 1:
            raise ValueError("oracle comparison needs a one-object groupoid")
        self.g, self.o = g, oracle
        L = d.lattice
        self.to_group = [oracle.pos[L.elements[d.a[s]].key] for s in range(d.n_simples)]
        self.to_simple = {x: s for s, x in enumerate(self.to_group)}
        if sorted(self.to_group) != sorted(oracle.simples):
            raise AssertionError("simple sets differ between engine and oracle")

    def element(self, f: Morphism) -> Element:
        return f.k, tuple(self.to_group[s] for s in f.factors)

    def positive(self, e: Element) -> Morphism:
        k, fs = e
        return self.g.mul(self.g.delta(0, k), self.g.from_simples(0, [self.to_simple[x] for x in fs]))


def compare_with_oracle(g: Garside, oracle: DualMonoidOracle, max_len: int = 4) -> OracleComparison:
    """Engine versus oracle on all signed words of simples of length <= ``max_len``.

    Normal forms are compared transition by transition: every (element, letter)
    pair reachable within ``max_len`` steps is multiplied in both models, which
    covers every word by induction on its length.  Meets and joins run over all
    pairs of positive elements given by words of length <= ``max_len // 2``,
    and fractions over every element reached.
    """
    br = _Bridge(g, oracle)
    out = OracleComparison(oracle.system.type_label)
    simples = list(range(g.data.n_simples))
    level = {g.identity(0)}
    reached = set(level)
    for _ in range(max_len):
        nxt = set()
        for f in sorted(level):
            ef = br.element(f)
            for s in simples:
                for sign in (1, -1):
                    lib = g.mul(f, g.simple(s) if sign > 0 else g.simple_inverse(s))
                    orc = oracle.times_simple(ef, br.to_group[s]) if sign > 0 else oracle.times_inverse(ef, br.to_group[s])
                    out.normal_forms += 1
                    if br.element(lib) != orc:
                        out.mismatches.append(f"nf {f} * {s}^{sign}: engine {br.element(lib)} oracle {orc}")
                    if lib not in reached:
                        reached.add(lib)
                        nxt.add(lib)
        level = nxt
    positives = {
        g.from_simples(0, w) for n in range(max_len // 2 + 1) for w in itertools.product(simples, repeat=n)
    }
    pos = sorted(positives)
    for i, a in enumerate(pos):
        ea = br.element(a)
        for b in pos[i:]:
            eb = br.element(b)
            out.meets += 1
            m = oracle.meet(ea, eb)
            if br.element(g.pos_meet(a, b)) != m:
                out.mismatches.append(f"meet {a} {b}")
            out.joins += 1
            j = oracle.join(ea, eb)
            if br.element(g.pos_join(a, b)) != j:
                out.mismatches.append(f"join {a} {b}")
    for f in sorted(reached):
        out.fractions += 1
        fr = g.fraction(f)
        den, num = oracle.fraction(br.element(f))
        if (br.element(fr.den), br.element(fr.num)) != (den, num):
            out.mismatches.append(f"fraction {f}")
    return out
