"""Finite posets, c.p.o. certification, Scott opens and continuity.

Subsets of a carrier are handled internally as integer bitmasks over the
element order; the public functions accept and return ordinary collections
of labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import (
    AntisymmetryViolation,
    NotACpo,
    SizeLimitExceeded,
    TransitivityViolation,
    UnknownElement,
)

DEFAULT_SIZE_LIMIT = 20_000

# exhaustive 2^n quantification above this is not attempted
EXHAUSTIVE_MAX = 16


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Poset:
    """Finite partial order over string labels.

    ``leq`` holds pairs ``(x, y)`` meaning x ⊑ y.  Reflexive pairs may be
    omitted; they are added here.  Antisymmetry and transitivity are checked
    and violations raise with a witness.
    """

    def __init__(self, elements, leq=()):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            dup = next(x for x in elements if elements.count(x) > 1)
            raise ValueError(f"duplicate element label {dup!r}")
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        up = [1 << i for i in range(n)]
        for x, y in leq:
            up[self.index(x)] |= 1 << self.index(y)
        for i in range(n):
            for j in bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise AntisymmetryViolation(elements[i], elements[j])
        for i in range(n):
            for j in bits(up[i]):
                missing = up[j] & ~up[i]
                if missing:
                    z = bits(missing)[0]
                    raise TransitivityViolation(elements[i], elements[j], elements[z])
        self.up = tuple(up)
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        self.leq = frozenset((elements[i], elements[j]) for i in range(n) for j in bits(up[i]))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        return isinstance(other, Poset) and self.elements == other.elements and self.leq == other.leq

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, {len(self.leq)} pairs)"

    @property
    def full(self):
        return (1 << len(self.elements)) - 1

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def le(self, x, y):
        return bool(self.up[self.index(x)] >> self.index(y) & 1)

    def mask(self, subset):
        m = 0
        for x in subset:
            m |= 1 << self.index(x)
        return m

    def members(self, mask):
        return [self.elements[i] for i in bits(mask)]

    def upper_bounds(self, mask):
        """Mask of the common upper bounds of the subset ``mask``."""
        ub = self.full
        for i in bits(mask):
            ub &= self.up[i]
        return ub

    def least_of(self, mask):
        """Index of the least element of the subset ``mask``, or None."""
        for i in bits(mask):
            if mask & ~self.up[i] == 0:
                return i
        return None

    def least(self):
        i = self.least_of(self.full)
        return None if i is None else self.elements[i]

    def is_upset(self, mask):
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def covers(self):
        """Covering pairs (x, y): x ⊏ y with nothing strictly between."""
        out = []
        for i in range(len(self)):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                between = strict & self.down[j] & ~(1 << j)
                if not between:
                    out.append((self.elements[i], self.elements[j]))
        return out

    @cached_property
    def directed_masks(self):
        """All directed subsets as ``(mask, lub index or None)``.

        Exhaustive over the 2^n subsets; only used for small carriers.
        """
        n = len(self)
        if n > EXHAUSTIVE_MAX:
            raise SizeLimitExceeded(1 << n, 1 << EXHAUSTIVE_MAX)
        out = []
        for m in range(1, 1 << n):
            if _mask_directed(self, m):
                out.append((m, self.least_of(self.upper_bounds(m))))
        return tuple(out)


def _mask_directed(poset, m):
    members = bits(m)
    for a, b in combinations(members, 2):
        if not (poset.up[a] & poset.up[b] & m):
            return False
    return m != 0


def certify_poset(elements, leq_pairs=()):
    """Validate a finite partial order (reflexive closure applied)."""
    return Poset(elements, leq_pairs)


def is_directed(poset, subset):
    """Non-empty and every pair has an upper bound inside the subset."""
    return _mask_directed(poset, poset.mask(subset))


def lub(poset, subset):
    """Least upper bound of ``subset`` or None when there is none.

    The empty subset has the least element of the poset (if any) as lub.
    """
    i = poset.least_of(poset.upper_bounds(poset.mask(subset)))
    return None if i is None else poset.elements[i]


def glb(poset, subset):
    lower = poset.full
    for i in bits(poset.mask(subset)):
        lower &= poset.down[i]
    for i in bits(lower):
        if lower & ~poset.down[i] == 0:
            return poset.elements[i]
    return None


@dataclass(frozen=True, eq=False)
class Cpo:
    """A finite poset with a least element, certified complete.

    ``tables`` is set on function-space carriers: ``tables[i]`` is the graph
    of element i as a tuple of codomain labels in domain element order.
    ``directed_witness`` records how completeness was certified.
    """

    poset: Poset
    bottom: str
    tables: tuple | None = None
    directed_witness: str = field(default="", compare=False)

    def __eq__(self, other):
        return isinstance(other, Cpo) and self.poset == other.poset and self.bottom == other.bottom

    def __hash__(self):
        return hash((self.poset, self.bottom))

    def __len__(self):
        return len(self.poset)

    @property
    def elements(self):
        return self.poset.elements


def certify_cpo(poset, bottom=None, tables=None):
    """Check ⊥ ⊑ x for all x and that every directed subset has a lub.

    On carriers up to ``EXHAUSTIVE_MAX`` elements every directed subset is
    enumerated and its lub located; the witness is its maximum element.  On
    larger carriers the certificate is the finite-carrier argument (a finite
    directed set contains its maximum), recorded as such.
    """
    if bottom is None:
        bottom = poset.least()
        if bottom is None:
            raise NotACpo("poset has no least element")
    b = poset.index(bottom)
    if poset.up[b] != poset.full:
        x = poset.members(poset.full & ~poset.up[b])[0]
        raise NotACpo(f"{bottom!r} is not below {x!r}")
    if len(poset) <= EXHAUSTIVE_MAX:
        for m, top in poset.directed_masks:
            if top is None or not (m >> top & 1):
                raise NotACpo(f"directed subset {poset.members(m)} has no maximum")
        witness = "exhaustive: every directed subset contains its lub"
    else:
        witness = "finite carrier: every directed subset contains its maximum"
    return Cpo(poset, bottom, tables, witness)


def flat_cpo(k, bottom="bot"):
    """The flat c.p.o. {⊥, 0, ..., k-1} (numerals pairwise incomparable)."""
    numerals = [str(i) for i in range(k)]
    return certify_cpo(Poset([bottom, *numerals], [(bottom, x) for x in numerals]), bottom)


def chain(n, prefix="c"):
    labels = [f"{prefix}{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i, n)]
    return certify_cpo(Poset(labels, pairs), labels[0])


# ---------------------------------------------------------------- Scott opens

@dataclass(frozen=True, eq=False)
class ScottSpace:
    """A finite poset with its enumerated opens (frozensets of labels).

    For a c.p.o. the opens are the Scott opens.  ``cpo`` is None when the
    space is a bare poset carrying the up-set (Alexandrov) topology, which is
    how the non-c.p.o. control spaces are handled.
    """

    poset: Poset
    opens: tuple
    cpo: Cpo | None = None

    @property
    def elements(self):
        return self.poset.elements

    @cached_property
    def open_masks(self):
        return tuple(self.poset.mask(A) for A in self.opens)

    @property
    def bottom(self):
        return None if self.cpo is None else self.cpo.bottom


def _is_final(poset, m):
    return poset.is_upset(m)


def _is_inaccessible(poset, m):
    for x, top in poset.directed_masks:
        if top is not None and m >> top & 1 and not (x & m):
            return False
    return True


def scott_opens(cpo, method="literal"):
    """Enumerate the Scott topology of a finite c.p.o.

    ``method="literal"`` tests every subset for finality and inaccessibility
    by directed sups.  ``method="upsets"`` uses that the two coincide on
    finite carriers and generates up-closures of antichains instead.
    """
    poset = cpo.poset
    if method == "literal":
        masks = [m for m in range(poset.full + 1)
                 if _is_final(poset, m) and _is_inaccessible(poset, m)]
    elif method == "upsets":
        masks = upset_masks(poset)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ScottSpace(poset, tuple(frozenset(poset.members(m)) for m in masks), cpo)


def upset_masks(poset):
    """Up-sets as the up-closures of antichains, sorted by mask value."""
    n = len(poset)
    found = {0}

    def extend(start, antichain, closure):
        for i in range(start, n):
            if any(poset.up[i] >> j & 1 or poset.up[j] >> i & 1 for j in antichain):
                continue
            c = closure | poset.up[i]
            found.add(c)
            extend(i + 1, antichain + [i], c)

    extend(0, [], 0)
    return sorted(found)


def alexandrov_space(poset):
    """Finite space whose opens are the up-sets (no c.p.o. required)."""
    masks = upset_masks(poset)
    cpo = None
    if poset.least() is not None and len(poset) <= EXHAUSTIVE_MAX:
        cpo = certify_cpo(poset)
    return ScottSpace(poset, tuple(frozenset(poset.members(m)) for m in masks), cpo)


def as_poset(space):
    if isinstance(space, Poset):
        return space
    return space.poset


# ---------------------------------------------------------------- maps

@dataclass(frozen=True)
class MonotoneFn:
    """Total map between finite posets, validated monotone on construction."""

    domain: Poset
    codomain: Poset
    table: tuple  # codomain labels in domain element order

    def __post_init__(self):
        if len(self.table) != len(self.domain):
            raise ValueError("table is not total on the domain")
        if not is_monotone(dict(zip(self.domain.elements, self.table)), self.domain, self.codomain):
            raise ValueError("map is not monotone")

    def __call__(self, x):
        return self.table[self.domain.index(x)]

    @classmethod
    def from_dict(cls, mapping, domain, codomain):
        return cls(domain, codomain, tuple(mapping[x] for x in domain.elements))


def _lookup(f):
    if isinstance(f, dict):
        return f.__getitem__
    return f


def is_monotone(f, src, dst):
    f = _lookup(f)
    src, dst = as_poset(src), as_poset(dst)
    return all(dst.le(f(x), f(y)) for x, y in src.leq)


def is_scott_continuous(f, src, dst):
    """f(⊔X) = ⊔f(X) for every directed X ⊆ src (exhaustive)."""
    f = _lookup(f)
    src, dst = as_poset(src), as_poset(dst)
    for m, top in src.directed_masks:
        image = {f(x) for x in src.members(m)}
        if top is None:
            continue
        sup = lub(dst, image)
        if sup is None or sup != f(src.elements[top]):
            return False
    return True


def monotone_tables(dom_size, dom_le, cod_size, cod_le, limit=DEFAULT_SIZE_LIMIT):
    """All monotone maps as index tables, in lexicographic table order.

    ``dom_le(i, j)`` / ``cod_le(i, j)`` decide the orders on indices.
    Backtracks over domain positions in index order, checking each new value
    against every already-assigned comparable position.
    """
    related = [[j for j in range(i) if dom_le(j, i) or dom_le(i, j)] for i in range(dom_size)]
    below = [[dom_le(j, i) for j in range(i)] for i in range(dom_size)]
    out = []
    table = [0] * dom_size

    def fill(i):
        if i == dom_size:
            out.append(tuple(table))
            if len(out) > limit:
                raise SizeLimitExceeded(len(out), limit)
            return
        for v in range(cod_size):
            ok = True
            for j in related[i]:
                if below[i][j]:
                    if not cod_le(table[j], v):
                        ok = False
                        break
                elif not cod_le(v, table[j]):
                    ok = False
                    break
            if ok:
                table[i] = v
                fill(i + 1)

    fill(0)
    return out


def function_space(src, dst, limit=DEFAULT_SIZE_LIMIT, label="f#{}"):
    """[src → dst]: continuous maps ordered pointwise, as a certified Cpo.

    Elements are labelled ``f#k`` in lexicographic order of their graph
    tables; ``tables`` holds the graphs.
    """
    sp, dp = src.poset, dst.poset
    tables = monotone_tables(
        len(sp), lambda i, j: bool(sp.up[i] >> j & 1),
        len(dp), lambda i, j: bool(dp.up[i] >> j & 1),
        limit,
    )
    labels = [label.format(k) for k in range(len(tables))]
    pairs = []
    for a, ta in enumerate(tables):
        for b, tb in enumerate(tables):
            if all(dp.up[x] >> y & 1 for x, y in zip(ta, tb)):
                pairs.append((labels[a], labels[b]))
    poset = Poset(labels, pairs)
    bot = dp.index(dst.bottom)
    bottom = labels[tables.index(tuple([bot] * len(sp)))]
    graphs = tuple(tuple(dp.elements[v] for v in t) for t in tables)
    return certify_cpo(poset, bottom, graphs)


# ---------------------------------------------------------------- I/O

def poset_to_json(obj):
    poset = as_poset(obj)
    data = {
        "elements": list(poset.elements),
        "leq": [[x, y] for x, y in sorted(poset.leq, key=lambda p: (poset.index(p[0]), poset.index(p[1])))
                if x != y],
    }
    bottom = getattr(obj, "bottom", None)
    if bottom is not None:
        data["bottom"] = bottom
    return data


def poset_from_json(data):
    """Poset JSON → Cpo when a bottom is declared (or present), else Poset."""
    if isinstance(data, str):
        data = json.loads(data)
    poset = Poset(data["elements"], [tuple(p) for p in data.get("leq", [])])
    if "bottom" in data:
        return certify_cpo(poset, data["bottom"])
    return poset


def load_poset(path):
    with open(path) as fh:
        return poset_from_json(json.load(fh))


def hasse_dot(obj, name="poset"):
    poset = as_poset(obj)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in poset.elements:
        lines.append(f'  "{x}";')
    for x, y in poset.covers():
        lines.append(f'  "{x}" -> "{y}" [arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
