"""Finite permutation groups with fully materialised elements.

Every group we care about is small (the largest paper example is A6 of order
360), so the group is stored as the list of all its elements; conjugacy
classes, power maps and p-regular parts are computed by direct enumeration.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from math import lcm
from typing import Iterable, Sequence

MAX_ORDER = 10**5


class GroupSizeError(ValueError):
    pass


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the image of point ``i``; products act right-to-left."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        s = self.images
        return Permutation(tuple(s[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Permutation.identity(self.degree), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    @property
    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"


def _pad(g: Permutation, degree: int) -> Permutation:
    if g.degree == degree:
        return g
    return Permutation(g.images + tuple(range(g.degree, degree)))


@dataclass(frozen=True)
class ConjClass:
    index: int
    representative: Permutation | None
    size: int
    element_order: int


class PermGroup:
    """A permutation group together with the list of all of its elements."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {g.images: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self.index

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, (c.element_order for c in self.classes), 1)

    @cached_property
    def _class_data(self):
        return _compute_classes(self)

    @property
    def classes(self) -> tuple[ConjClass, ...]:
        return self._class_data[0]

    @property
    def class_of_element(self) -> tuple[int, ...]:
        """class index of each element, indexed like ``elements``."""
        return self._class_data[1]

    def class_of(self, g: Permutation) -> int:
        return self.class_of_element[self.index[g.images]]

    def power_map(self, k: int) -> tuple[int, ...]:
        """class of g^k for g in each class."""
        return tuple(self.class_of(c.representative**k) for c in self.classes)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def enumerate_group(
    generators: Iterable[Permutation], degree: int | None = None, cap: int = MAX_ORDER
) -> PermGroup:
    """Breadth-first closure of ``generators``; raises GroupSizeError past ``cap``."""
    gens = list(generators)
    if degree is None:
        degree = max((g.degree for g in gens), default=1)
    gens = [_pad(g, degree) for g in gens]
    gens = [g for g in gens if not g.is_identity()]
    e = Permutation.identity(degree)
    seen = {e.images}
    elements = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s * g
            if h.images not in seen:
                seen.add(h.images)
                elements.append(h)
                if len(elements) > cap:
                    raise GroupSizeError(f"group order exceeds the cap of {cap}")
                queue.append(h)
    return PermGroup(degree, gens, elements)


def _compute_classes(G: PermGroup):
    elems = G.elements
    gens = G.generators
    gen_inv = [s.inverse() for s in gens]
    assigned = [-1] * len(elems)
    orbits = []
    for i, g in enumerate(elems):
        if assigned[i] >= 0:
            continue
        orbit = [i]
        assigned[i] = len(orbits)
        queue = deque([g])
        while queue:
            h = queue.popleft()
            for s, si in zip(gens, gen_inv):
                c = s * h * si
                j = G.index[c.images]
                if assigned[j] < 0:
                    assigned[j] = len(orbits)
                    orbit.append(j)
                    queue.append(c)
        orbits.append(orbit)
    keyed = []
    for orbit in orbits:
        rep = min((elems[j] for j in orbit), key=lambda h: h.images)
        keyed.append(((rep.order, len(orbit), rep.images), rep, orbit))
    keyed.sort(key=lambda t: t[0])
    class_of = [0] * len(elems)
    classes = []
    for idx, (key, rep, orbit) in enumerate(keyed):
        for j in orbit:
            class_of[j] = idx
        classes.append(ConjClass(idx, rep, len(orbit), key[0]))
    return tuple(classes), tuple(class_of)


def conjugacy_classes(G: PermGroup) -> tuple[ConjClass, ...]:
    """Classes ordered by (element order, size, smallest member); identity first."""
    return G.classes


def p_part_exponent(order: int, p: int) -> tuple[int, int]:
    a = 0
    while order % p == 0:
        order //= p
        a += 1
    return a, order


def p_regular_part(g: Permutation, p: int) -> Permutation:
    """The power of g of order prime to p whose cofactor has p-power order."""
    a, m = p_part_exponent(g.order, p)
    pa = p**a
    if m == 1:
        return Permutation.identity(g.degree)
    # p^a * t = 1 (mod m)
    t = pow(pa, -1, m)
    return g ** (pa * t)


def fusion_map(G: PermGroup, p: int) -> tuple[int, ...]:
    """class index -> class index of the p-regular parts."""
    return tuple(G.class_of(p_regular_part(c.representative, p)) for c in G.classes)


def label_classes(orders: Sequence[int]) -> list[str]:
    """ATLAS-style labels 1a, 2a, 3a, 3b, ... from element orders in class order."""
    counts: dict[int, int] = {}
    out = []
    for o in orders:
        k = counts.get(o, 0)
        counts[o] = k + 1
        out.append(f"{o}{_letters(k)}")
    return out


def _letters(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def abelian_invariants(G: PermGroup) -> list[int]:
    """Primary invariants p^a of an abelian group, ascending."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    n = G.order
    orders = [g.order for g in G.elements]
    out = []
    for p, a in _factor(n).items():
        # log_p #{g : g^(p^k) = 1} for k = 0, 1, ...
        logs = [0]
        k = 1
        while logs[-1] < a:
            count = sum(1 for o in orders if (p**k) % o == 0)
            logs.append(_ilog(count, p))
            k += 1
        # number of cyclic factors of exponent >= k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for k in range(len(at_least)):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            out.extend([p ** (k + 1)] * (at_least[k] - nxt))
    return sorted(out)


def _ilog(x: int, p: int) -> int:
    k = 0
    while x % p == 0 and x > 1:
        x //= p
        k += 1
    if x != 1:
        raise ArithmeticError("not a power of p")
    return k


def _factor(n: int) -> dict[int, int]:
    from .cyclotomic import factorize

    return factorize(n)


# --------------------------------------------------------------------------
# named families


def cyclic(k: int) -> PermGroup:
    if k < 1:
        raise DescriptorError("cyclic group needs k >= 1")
    if k == 1:
        return enumerate_group([], degree=1)
    return enumerate_group([Permutation(tuple((i + 1) % k for i in range(k)))])


def dihedral2n(k: int) -> PermGroup:
    """Dihedral group of order 2k (symmetries of a k-gon for k >= 3)."""
    if k < 1:
        raise DescriptorError("dihedral group needs k >= 1")
    if k == 1:
        return cyclic(2)
    if k == 2:
        return direct_product(cyclic(2), cyclic(2))
    rot = Permutation(tuple((i + 1) % k for i in range(k)))
    ref = Permutation(tuple((-i) % k for i in range(k)))
    return enumerate_group([rot, ref])


def symmetric(k: int) -> PermGroup:
    if k < 1:
        raise DescriptorError("symmetric group needs k >= 1")
    if k <= 1:
        return enumerate_group([], degree=1)
    gens = [Permutation(tuple((i + 1) % k for i in range(k))), Permutation.from_cycles([(0, 1)], k)]
    return enumerate_group(gens)


def alternating(k: int) -> PermGroup:
    if k < 1:
        raise DescriptorError("alternating group needs k >= 1")
    if k <= 2:
        return enumerate_group([], degree=max(k, 1))
    return enumerate_group([Permutation.from_cycles([(0, 1, i)], k) for i in range(2, k)])


def direct_product(*groups: PermGroup) -> PermGroup:
    """Direct product acting on disjoint point sets."""
    gens, offset = [], 0
    total = sum(G.degree for G in groups)
    for G in groups:
        for s in G.generators:
            img = list(range(total))
            for i, j in enumerate(s.images):
                img[offset + i] = offset + j
            gens.append(Permutation(tuple(img)))
        offset += G.degree
    return enumerate_group(gens, degree=max(total, 1))


_FAMILIES = {"C": cyclic, "D": None, "S": symmetric, "A": alternating}


def parse_perm_list(text: str) -> list[Permutation]:
    """Parse ``[(0,1,2),(0,1)(2,3)]``: generators separated by top-level commas."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise DescriptorError(f"expected a bracketed generator list, got {text!r}")
    body = body[1:-1].strip()
    if not body:
        return []
    chunks, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            chunks.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise DescriptorError(f"unbalanced parentheses in {text!r}")
    chunks.append(cur)
    parsed = []
    for chunk in chunks:
        chunk = chunk.replace(" ", "")
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+|\(\)", chunk):
            raise DescriptorError(f"bad cycle notation {chunk!r}")
        cycles = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\(([\d,]+)\)", chunk)]
        for c in cycles:
            if len(set(c)) != len(c):
                raise DescriptorError(f"repeated point in cycle {c}")
        parsed.append(cycles)
    degree = max((max(c) for cyc in parsed for c in cyc), default=0) + 1
    return [Permutation.from_cycles(cyc, degree) for cyc in parsed]


def make_group(spec: str) -> PermGroup:
    """Build a group from a descriptor: ``A4``, ``S5``, ``C6``, ``D8`` (order 8),
    ``C2xC4`` or ``perm:[(0,1,2),(0,1)(2,3)]``."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        return enumerate_group(parse_perm_list(spec[5:]))
    factors = spec.split("x")
    groups = []
    for f in factors:
        m = re.fullmatch(r"([CDSA])(\d+)", f.strip())
        if not m:
            raise DescriptorError(f"unknown group descriptor {f!r}")
        fam, k = m.group(1), int(m.group(2))
        if fam == "D":
            if k < 2 or k % 2:
                raise DescriptorError(f"dihedral descriptor D{k} needs an even order")
            groups.append(dihedral2n(k // 2))
        else:
            groups.append(_FAMILIES[fam](k))
    if len(groups) == 1:
        return groups[0]
    return direct_product(*groups)


def abelian_groups(n: int) -> list[list[int]]:
    """Primary invariant lists of all abelian groups of order n, one per type."""
    parts_per_prime = []
    for p, a in _factor(n).items():
        parts_per_prime.append([[p**k for k in part] for part in _partitions(a)])
    out: list[list[int]] = [[]]
    for options in parts_per_prime:
        out = [x + y for x in out for y in options]
    return [sorted(x) for x in out]


def _partitions(a: int, largest: int | None = None) -> list[list[int]]:
    if a == 0:
        return [[]]
    largest = a if largest is None else largest
    out = []
    for k in range(min(a, largest), 0, -1):
        for rest in _partitions(a - k, k):
            out.append([k] + rest)
    return out


def abelian_from_invariants(invariants: Sequence[int]) -> PermGroup:
    if not invariants:
        return cyclic(1)
    return direct_product(*(cyclic(q) for q in invariants))
