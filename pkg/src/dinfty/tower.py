"""The truncated function-space tower D0, D1 = [D0→D0], ..., DN.

Level elements are integer indices.  Level 0 is the flat c.p.o.
{⊥, 0, ..., k-1} (index 0 is ⊥); an element of level n+1 is a monotone map
on level n, stored as its graph: a tuple of level-n indices.  Every level's
bottom is index 0 (the constant-⊥ map is lexicographically first).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import LevelOutOfRange, NonMonotoneRealization, SizeLimitExceeded, TowerMismatch
from .order import DEFAULT_SIZE_LIMIT, Poset, certify_cpo, flat_cpo, monotone_tables, scott_opens

# levels larger than this keep their order implicit (computed pointwise)
MATERIALIZE_MAX = 1024


class Tower:
    """D0..DN with the embedding/projection tables φn: Dn→Dn+1, ψn: Dn+1→Dn."""

    def __init__(self, k, N, size_limit=DEFAULT_SIZE_LIMIT):
        if k < 1 or N < 1:
            raise ValueError("need k >= 1 and N >= 1")
        self.k, self.N, self.size_limit = k, N, size_limit
        d0 = flat_cpo(k)
        self.labels = [list(d0.elements)]
        self.tables = [None]
        self._up = [list(d0.poset.up)]
        self.lookup = [None]
        for n in range(N):
            size = len(self.labels[n])
            le = self._le_fn(n)
            try:
                tabs = monotone_tables(size, le, size, le, size_limit)
            except SizeLimitExceeded as exc:
                raise SizeLimitExceeded(exc.count, size_limit, level=n + 1) from None
            self.tables.append(tabs)
            self.lookup.append({t: i for i, t in enumerate(tabs)})
            self.labels.append([f"f#{i}" for i in range(len(tabs))])
            self._up.append(self._up_masks(n + 1))
        assert all(self.tables[n][0] == (0,) * len(self.labels[n - 1]) for n in range(1, N + 1))
        self.phi, self.psi = self._projections()
        self._check_projection_pairs()

    def _le_fn(self, n):
        up = self._up[n]
        if up is not None:
            return lambda i, j: bool(up[i] >> j & 1)
        below = self._le_fn(n - 1)
        tabs = self.tables[n]
        return lambda i, j: all(below(a, b) for a, b in zip(tabs[i], tabs[j]))

    def _up_masks(self, n):
        if len(self.labels[n]) > MATERIALIZE_MAX:
            return None
        below = self._le_fn(n - 1)
        tabs = self.tables[n]
        size = len(tabs)
        up = []
        for i in range(size):
            m = 0
            for j in range(size):
                if all(below(a, b) for a, b in zip(tabs[i], tabs[j])):
                    m |= 1 << j
            up.append(m)
        return up

    def _projections(self):
        phi, psi = [], []
        # level 0: constant maps and evaluation at ⊥
        size0 = len(self.labels[0])
        phi.append(tuple(self.lookup[1][(d,) * size0] for d in range(size0)))
        psi.append(tuple(g[0] for g in self.tables[1]))
        for n in range(self.N - 1):
            ph, ps = phi[n], psi[n]
            up_tabs = self.tables[n + 1]
            # φn+1(d) = φn ∘ d ∘ ψn ;  ψn+1(g) = ψn ∘ g ∘ φn
            phi.append(tuple(
                self.lookup[n + 2][tuple(ph[up_tabs[d][ps[x]]] for x in range(len(up_tabs)))]
                for d in range(len(up_tabs))
            ))
            psi.append(tuple(
                self.lookup[n + 1][tuple(ps[g[ph[x]]] for x in range(len(self.labels[n])))]
                for g in self.tables[n + 2]
            ))
        return tuple(phi), tuple(psi)

    def _check_projection_pairs(self):
        for n in range(self.N):
            le = self._le_fn(n + 1)
            for d in range(len(self.labels[n])):
                if self.psi[n][self.phi[n][d]] != d:
                    raise AssertionError(f"psi{n}(phi{n}({d})) != {d}")
            for x in range(len(self.labels[n + 1])):
                if not le(self.phi[n][self.psi[n][x]], x):
                    raise AssertionError(f"phi{n}(psi{n}({x})) not below {x}")

    # -- order and carriers

    def size(self, n):
        return len(self.labels[self._level(n)])

    def sizes(self):
        return [len(lab) for lab in self.labels]

    def le(self, n, i, j):
        return self._le_fn(self._level(n))(i, j)

    def _level(self, n):
        if not 0 <= n <= self.N:
            raise LevelOutOfRange(f"level {n} outside 0..{self.N}")
        return n

    def index(self, n, label):
        if isinstance(label, int):
            if not 0 <= label < self.size(n):
                raise LevelOutOfRange(f"no element {label} at level {n}")
            return label
        try:
            return self.labels[self._level(n)].index(label)
        except ValueError:
            raise LevelOutOfRange(f"no element {label!r} at level {n}") from None

    def cpo(self, n):
        """Level n as a certified Cpo (only for materialized levels)."""
        n = self._level(n)
        up = self._up[n]
        if up is None:
            raise SizeLimitExceeded(self.size(n), MATERIALIZE_MAX, level=n)
        labels = self.labels[n]
        pairs = [(labels[i], labels[j]) for i in range(len(labels)) for j in range(len(labels)) if up[i] >> j & 1]
        graphs = None
        if n > 0:
            prev = self.labels[n - 1]
            graphs = tuple(tuple(prev[v] for v in t) for t in self.tables[n])
        return certify_cpo(Poset(labels, pairs), labels[0], graphs)

    def apply_level(self, n, f, x):
        """Evaluate f ∈ D(n+1) at x ∈ Dn."""
        return self.tables[n + 1][f][x]

    # -- tower elements

    def elements(self):
        return [TowerElement(self, top) for top in range(self.size(self.N))]

    def bottom(self):
        return TowerElement(self, 0)

    @cached_property
    def space(self):
        """The truncated D∞ carrier, ordered componentwise, with its Scott opens."""
        elems = self.elements()
        labels = [e.label for e in elems]
        pairs = [(a.label, b.label) for a in elems for b in elems if leq(a, b)]
        return scott_opens(certify_cpo(Poset(labels, pairs), labels[0]))


def build_tower(k, N, size_limit=DEFAULT_SIZE_LIMIT):
    return Tower(k, N, size_limit)


def embed(tower, n, m, d):
    """φ_{n,m}(d) = φ_{m-1} ∘ ... ∘ φ_n (d)."""
    _check_range(tower, n, m)
    d = tower.index(n, d)
    for level in range(n, m):
        d = tower.phi[level][d]
    return d


def project(tower, m, n, d):
    """ψ_{m,n}(d) = ψ_n ∘ ... ∘ ψ_{m-1} (d)."""
    _check_range(tower, n, m)
    d = tower.index(m, d)
    for level in range(m - 1, n - 1, -1):
        d = tower.psi[level][d]
    return d


def _check_range(tower, n, m):
    if not 0 <= n <= m <= tower.N:
        raise LevelOutOfRange(f"need 0 <= {n} <= {m} <= {tower.N}")


@dataclass(frozen=True)
class TowerElement:
    """A compatible sequence (d0, ..., dN); identified by its top component."""

    tower: Tower = field(compare=False, repr=False)
    top: int

    @cached_property
    def components(self):
        comps = [self.top]
        for level in range(self.tower.N - 1, -1, -1):
            comps.append(self.tower.psi[level][comps[-1]])
        return tuple(reversed(comps))

    def component(self, n):
        return self.components[n]

    @property
    def label(self):
        return self.tower.labels[self.tower.N][self.top]

    def labels(self):
        return [self.tower.labels[n][c] for n, c in enumerate(self.components)]

    def __repr__(self):
        return f"TowerElement({self.label})"


def make_element(tower, top):
    return TowerElement(tower, tower.index(tower.N, top))


def is_compatible(components, tower):
    """ψn(d_{n+1}) = d_n for all n < N."""
    return all(tower.psi[n][components[n + 1]] == components[n] for n in range(tower.N))


def leq(a, b):
    """d ⊑ d' iff d_n ⊑ d'_n at every level."""
    _same_tower(a, b)
    t = a.tower
    return all(t.le(n, x, y) for n, (x, y) in enumerate(zip(a.components, b.components)))


def _same_tower(a, b):
    if a.tower is not b.tower:
        raise TowerMismatch("elements belong to different towers")


def apply(a, b):
    """a • b: the top map a_N applied to b_{N-1}, re-embedded to level N."""
    _same_tower(a, b)
    t = a.tower
    c = t.apply_level(t.N - 1, a.top, b.component(t.N - 1))
    return TowerElement(t, t.phi[t.N - 1][c])


def elem_to_fun(tower, a):
    """F(a) = λb. a • b."""
    if a.tower is not tower:
        raise TowerMismatch("element belongs to a different tower")
    return lambda b: apply(a, b)


def fun_to_elem(tower, f):
    """Truncated F⁻¹: realize f by its action on embedded level-(N-1) points.

    The top component is g(x) = component_{N-1}(f(φ(x))) for x ∈ D_{N-1};
    g must be monotone to be a point of D_N.
    """
    n = tower.N - 1
    size = tower.size(n)
    g = tuple(f(TowerElement(tower, tower.phi[n][x])).component(n) for x in range(size))
    le = tower._le_fn(n)
    for x in range(size):
        for y in range(size):
            if le(x, y) and not le(g[x], g[y]):
                raise NonMonotoneRealization(
                    f"realized map sends {tower.labels[n][x]} ⊑ {tower.labels[n][y]} "
                    f"to {tower.labels[n][g[x]]} ⋢ {tower.labels[n][g[y]]}"
                )
    return TowerElement(tower, tower.lookup[tower.N][g])


# ---------------------------------------------------------------- I/O

def tower_to_json(tower):
    levels = []
    for n in range(tower.N + 1):
        labels = tower.labels[n]
        entry = {"level": n, "size": len(labels), "elements": labels, "bottom": labels[0]}
        if tower._up[n] is not None:
            up = tower._up[n]
            entry["leq"] = [[labels[i], labels[j]] for i in range(len(labels))
                            for j in range(len(labels)) if i != j and up[i] >> j & 1]
        if n > 0:
            prev = tower.labels[n - 1]
            entry["tables"] = {labels[i]: [prev[v] for v in t] for i, t in enumerate(tower.tables[n])}
        levels.append(entry)
    return {
        "k": tower.k,
        "N": tower.N,
        "levels": levels,
        "phi": [{tower.labels[n][d]: tower.labels[n + 1][e] for d, e in enumerate(tower.phi[n])}
                for n in range(tower.N)],
        "psi": [{tower.labels[n + 1][g]: tower.labels[n][e] for g, e in enumerate(tower.psi[n])}
                for n in range(tower.N)],
    }


def tower_from_json(data, size_limit=None):
    """Rebuild the tower named by a dump and check the dump agrees with it."""
    if isinstance(data, str):
        data = json.loads(data)
    limit = size_limit or max(DEFAULT_SIZE_LIMIT, max(lv["size"] for lv in data["levels"]))
    tower = build_tower(data["k"], data["N"], limit)
    fresh = tower_to_json(tower)
    for key in ("levels", "phi", "psi"):
        if data[key] != fresh[key]:
            raise TowerMismatch(f"tower dump disagrees with the rebuilt tower in {key!r}")
    return tower


def load_tower(path):
    with open(path) as fh:
        return tower_from_json(json.load(fh))
