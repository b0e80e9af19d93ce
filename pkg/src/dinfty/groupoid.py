"""Finite globular sets, the strict ∞-groupoid axiom checker, and the
symbolic groupoid of homotopy-group cells of a finite space.

Cells of the space groupoid are (base point, level) pairs standing for
π_n(D, d); their group content is a certificate, never a computed group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .errors import IncompleteTable, LevelOutOfRange, NotComposable, TowerMismatch
from .order import Poset, as_poset, certify_cpo


@dataclass
class GlobularSet:
    """Carriers C0..CN with source/target maps C_n → C_{n-1} (n ≥ 1).

    ``source[n]`` and ``target[n]`` are dicts on C_n; index 0 is unused.
    """

    carriers: list
    source: list
    target: list

    @property
    def N(self):
        return len(self.carriers) - 1

    def s(self, d, n, times=1):
        for level in range(n, n - times, -1):
            d = self.source[level][d]
        return d

    def t(self, d, n, times=1):
        for level in range(n, n - times, -1):
            d = self.target[level][d]
        return d


def check_globular(g):
    """Both globularity identities on every level ≥ 2; returns (ok, violations)."""
    bad = []
    for n in range(2, g.N + 1):
        for d in g.carriers[n]:
            sd, td = g.source[n][d], g.target[n][d]
            if g.source[n - 1][sd] != g.source[n - 1][td]:
                bad.append({"identity": "s∘s = s∘t", "level": n, "cell": str(d)})
            if g.target[n - 1][sd] != g.target[n - 1][td]:
                bad.append({"identity": "t∘s = t∘t", "level": n, "cell": str(d)})
    return not bad, bad


def pullback_set(g, n, p):
    """{(d', d) ∈ Cn × Cn : t^{n-p}(d) = s^{n-p}(d')}."""
    if not 0 <= p < n <= g.N:
        raise LevelOutOfRange(f"need 0 <= p < n <= {g.N}, got p={p}, n={n}")
    k = n - p
    tgt = {d: g.t(d, n, k) for d in g.carriers[n]}
    src = {d: g.s(d, n, k) for d in g.carriers[n]}
    return {(d2, d) for d2 in g.carriers[n] for d in g.carriers[n] if tgt[d] == src[d2]}


def is_diagonal(pairs):
    return all(a == b for a, b in pairs)


@dataclass
class CellGroupoid:
    """A globular set with ∘p tables on the pullbacks and identities i: Cn → Cn+1.

    ``compositions[(n, p)]`` maps (d', d) to d' ∘p d; ``identities[n]`` maps
    C_n to C_{n+1} for n < N.
    """

    globular: GlobularSet
    compositions: dict
    identities: list

    @property
    def N(self):
        return self.globular.N

    def compose(self, n, p, d2, d):
        table = self.compositions.get((n, p), {})
        if (d2, d) not in table:
            raise NotComposable(f"({d2}, {d}) is not in C{n} ×_C{p} C{n}")
        return table[(d2, d)]

    def identity(self, d, n, times=1):
        for level in range(n, n + times):
            d = self.identities[level][d]
        return d


def _complete(g):
    for n in range(1, g.N + 1):
        for p in range(n):
            table = g.compositions.get((n, p), {})
            missing = pullback_set(g.globular, n, p) - set(table)
            if missing:
                d2, d = sorted(missing, key=str)[0]
                raise IncompleteTable(f"∘{p} on level {n} is undefined at ({d2}, {d})")
    for n in range(g.N):
        missing = [d for d in g.globular.carriers[n] if d not in g.identities[n]]
        if missing:
            raise IncompleteTable(f"identity undefined on {missing[0]} at level {n}")


class _Axiom:
    def __init__(self, letter, name):
        self.letter, self.name = letter, name
        self.checked = 0
        self.witnesses = []

    def check(self, ok, **witness):
        self.checked += 1
        if not ok and len(self.witnesses) < 5:
            self.witnesses.append({k: str(v) for k, v in witness.items()})
        if not ok:
            self.failed = getattr(self, "failed", 0) + 1

    def as_dict(self):
        failed = getattr(self, "failed", 0)
        return {"name": self.name, "passed": failed == 0, "checked": self.checked,
                "failed": failed, "witnesses": self.witnesses}


def _try(fn):
    try:
        return fn()
    except (NotComposable, KeyError):
        return None


def check_strict_axioms(g):
    """Exhaustively verify axioms a–g; one entry per axiom letter.

    A composite that the axiom needs but the tables do not define counts as
    a failed instance.
    """
    _complete(g)
    G = g.globular
    N = g.N
    ax = {c: _Axiom(c, name) for c, name in [
        ("a", "sources and targets of composites"), ("b", "sources and targets of identities"),
        ("c", "associativity"), ("d", "identities"), ("e", "binary interchange"),
        ("f", "nullary interchange"), ("g", "inverse")]}
    pull = {(n, p): pullback_set(G, n, p) for n in range(1, N + 1) for p in range(n)}

    for (n, p), pairs in pull.items():
        comp = lambda a, b, n=n, p=p: g.compose(n, p, a, b)  # noqa: E731
        # a
        for d2, d in pairs:
            c = comp(d2, d)
            if p == n - 1:
                ax["a"].check(G.source[n][c] == G.source[n][d] and G.target[n][c] == G.target[n][d2],
                              n=n, p=p, pair=(d2, d))
            else:
                s_ok = _try(lambda: g.compose(n - 1, p, G.source[n][d2], G.source[n][d])) == G.source[n][c]
                t_ok = _try(lambda: g.compose(n - 1, p, G.target[n][d2], G.target[n][d])) == G.target[n][c]
                ax["a"].check(s_ok and t_ok, n=n, p=p, pair=(d2, d))
        # c
        for d2, d1 in pairs:
            for d1b, d in pairs:
                if d1b != d1:
                    continue
                left = _try(lambda: comp(comp(d2, d1), d))
                right = _try(lambda: comp(d2, comp(d1, d)))
                ax["c"].check(left is not None and left == right, n=n, p=p, triple=(d2, d1, d))
        # d, g
        k = n - p
        for d in G.carriers[n]:
            lo = _try(lambda: g.identity(G.t(d, n, k), p, k))
            hi = _try(lambda: g.identity(G.s(d, n, k), p, k))
            ok = lo is not None and hi is not None and \
                _try(lambda: comp(lo, d)) == d and _try(lambda: comp(d, hi)) == d
            ax["d"].check(ok, n=n, p=p, cell=d)
            found = any(
                G.source[n][e] == G.target[n][d] and G.target[n][e] == G.source[n][d]
                and _try(lambda: comp(e, d)) == hi and _try(lambda: comp(d, e)) == lo
                for e in G.carriers[n]
            )
            ax["g"].check(found, n=n, p=p, cell=d)
        # e: 0 ≤ q < p < n
        for q in range(p):
            qpairs = pull[(n, q)]
            for e2, e in pairs:
                for d2, d in pairs:
                    if (e2, d2) not in qpairs or (e, d) not in qpairs:
                        continue
                    left = _try(lambda: g.compose(n, q, comp(e2, e), comp(d2, d)))
                    right = _try(lambda: comp(g.compose(n, q, e2, d2), g.compose(n, q, e, d)))
                    ax["e"].check(left is not None and left == right, n=n, p=p, q=q,
                                  cells=(e2, e, d2, d))
    # b
    for n in range(N):
        for d in G.carriers[n]:
            one = g.identities[n][d]
            ax["b"].check(G.source[n + 1][one] == d == G.target[n + 1][one], n=n, cell=d)
    # f: d, d' ∈ Cp ×_Cq Cp with 0 ≤ q < p < N (identities land in C_{p+1})
    for p in range(1, N):
        for q in range(p):
            for d2, d in pull[(p, q)]:
                left = _try(lambda: g.compose(p + 1, q, g.identities[p][d2], g.identities[p][d]))
                right = _try(lambda: g.identities[p][g.compose(p, q, d2, d)])
                ax["f"].check(left is not None and left == right, p=p, q=q, pair=(d2, d))
    report = {c: a.as_dict() for c, a in ax.items()}
    globular_ok, violations = check_globular(G)
    report["globular"] = {"passed": globular_ok, "witnesses": violations[:5]}
    report["diagonal"] = {f"{n},{p}": is_diagonal(pairs) for (n, p), pairs in pull.items()}
    return report


def axioms_pass(report):
    return all(report[c]["passed"] for c in "abcdefg") and report["globular"]["passed"]


# ---------------------------------------------------------------- the space groupoid

@dataclass(frozen=True)
class SymbolicPiCell:
    """π_level(D, base); equal iff same base and level."""

    base: object
    level: int
    certificate: str = field(default="unverified", compare=False)

    def __str__(self):
        return str(self.base) if self.level == 0 else f"π{self.level}({self.base})"


def _group_certificate(space):
    from .homotopy import is_cone
    cone, apex = is_cone(space)
    return f"trivial (cone with apex {apex})" if cone else "unverified group content"


def build_D_groupoid(space, N=3):
    """One cell π_n(D, d) per (point, level); s = t drops the level;
    composition only on the diagonal, where it is idempotent; 1_d raises
    the level."""
    if N < 1:
        raise ValueError("need N >= 1")
    poset = as_poset(space)
    cert = _group_certificate(poset)
    cells = [[SymbolicPiCell(d, n, "point" if n == 0 else cert) for d in poset.elements]
             for n in range(N + 1)]
    down = [None] + [{c: cells[n - 1][i] for i, c in enumerate(cells[n])} for n in range(1, N + 1)]
    G = GlobularSet(cells, down, [None] + [dict(m) for m in down[1:]])
    compositions = {}
    for n in range(1, N + 1):
        for p in range(n):
            pairs = pullback_set(G, n, p)
            off = [pq for pq in pairs if pq[0] != pq[1]]
            if off:
                raise NotComposable(f"non-diagonal pair {off[0]} on level {n}")
            compositions[(n, p)] = {(d, d): d for d, _ in pairs}
    identities = [{c: cells[n + 1][i] for i, c in enumerate(cells[n])} for n in range(N)]
    return CellGroupoid(G, compositions, identities)


def discrete_groupoid(objects, N=1):
    """Only identity cells: C_n = {1^n_x}."""
    cells = [[(x, n) for x in objects] for n in range(N + 1)]
    down = [None] + [{(x, n): (x, n - 1) for x in objects} for n in range(1, N + 1)]
    G = GlobularSet(cells, down, [None] + [dict(m) for m in down[1:]])
    comps = {(n, p): {pq: pq[0] for pq in pullback_set(G, n, p)} for n in range(1, N + 1) for p in range(n)}
    ids = [{(x, n): (x, n + 1) for x in objects} for n in range(N)]
    return CellGroupoid(G, comps, ids)


def groupoid_report_json(report):
    return json.dumps(report, ensure_ascii=False, indent=2, default=str)


def groupoid_dot(g):
    """Levels as columns, s and t as arrows into the previous column."""
    G = g.globular
    lines = ["digraph globular {", "  rankdir=RL;", "  node [shape=plaintext];"]

    def node(c, n):
        return f'"{n}:{c}"'

    for n, carrier in enumerate(G.carriers):
        lines.append(f"  subgraph cluster_{n} {{ label=\"level {n}\";")
        for c in carrier:
            lines.append(f'    {node(c, n)} [label="{c}"];')
        lines.append("  }")
    for n in range(1, G.N + 1):
        for c in G.carriers[n]:
            s, t = G.source[n][c], G.target[n][c]
            if s == t:
                lines.append(f'  {node(c, n)} -> {node(s, n - 1)} [label="s=t"];')
            else:
                lines.append(f'  {node(c, n)} -> {node(s, n - 1)} [label="s"];')
                lines.append(f'  {node(c, n)} -> {node(t, n - 1)} [label="t", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- cell sequences

class CellSequence:
    """⟨𝔡0, 𝔡1, ..., 𝔡N⟩ with s(𝔡n+1) = t(𝔡n+1) = 𝔡n; equality by level 0."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        cells = tuple(cells)
        for n in range(1, len(cells)):
            if cells[n].level != n or cells[n].base != cells[n - 1].base:
                raise ValueError(f"cell {cells[n]} does not sit over {cells[n - 1]}")
        self.cells = cells

    @classmethod
    def over(cls, base, N, certificate="unverified"):
        return cls(SymbolicPiCell(base, n, certificate) for n in range(N + 1))

    @property
    def base(self):
        return self.cells[0].base

    def __eq__(self, other):
        return isinstance(other, CellSequence) and self.cells[0] == other.cells[0]

    def __hash__(self):
        return hash(self.cells[0])

    def render(self):
        """The constant-path matrix view ⟨d, c_d, c_{c_d}, ...⟩."""
        name = getattr(self.base, "label", self.base)
        parts, cur = [], str(name)
        for _ in self.cells:
            parts.append(cur)
            cur = f"c_{{{cur}}}" if len(cur) > 1 else f"c_{cur}"
        return "⟨" + ", ".join(parts) + "⟩"

    def __repr__(self):
        return f"CellSequence({self.render()})"


def build_cell_sequences(space, N=3):
    poset = as_poset(space)
    cert = _group_certificate(poset)
    return [CellSequence.over(d, N, cert) for d in poset.elements]


def apply_cells(a, b, tower):
    """π_n(a) • π_n(b) := π_n(a • b), level by level."""
    from .tower import TowerElement, apply

    for x in (a, b):
        if not isinstance(x.base, TowerElement) or x.base.tower is not tower:
            raise TowerMismatch("cell sequences must sit over elements of the given tower")
    if len(a.cells) != len(b.cells):
        raise ValueError("cell sequences truncated at different levels")
    cells = [SymbolicPiCell(apply(x.base, y.base), n, x.certificate)
             for n, (x, y) in enumerate(zip(a.cells, b.cells))]
    return CellSequence(cells)


def check_iso_F(tower, N=3):
    """F: d ↦ its cell sequence, checked exhaustively on the truncated tower:
    bijectivity, F(a•b) = F(a)•F(b), order transfer, and the transferred
    order certified as a c.p.o."""
    from .tower import apply, leq

    elems = tower.elements()
    cert = _group_certificate(tower.space)
    F = {e: CellSequence.over(e, N, cert) for e in elems}
    image = set(F.values())
    injective = len(image) == len(elems)
    # every compatible cell sequence over the space is the image of its level-0 base
    surjective = all(F[s.base] == s for s in (CellSequence.over(e, N) for e in elems))
    hom_fail = []
    for a in elems:
        for b in elems:
            if F[apply(a, b)] != apply_cells(F[a], F[b], tower):
                hom_fail.append([a.label, b.label])
    order_fail = []
    seq_pairs = []
    for a in elems:
        for b in elems:
            seq_le = leq(F[a].base, F[b].base)
            if seq_le != leq(a, b):
                order_fail.append([a.label, b.label])
            if seq_le:
                seq_pairs.append((F[a].render(), F[b].render()))
    try:
        labels = [F[e].render() for e in elems]
        certify_cpo(Poset(labels, seq_pairs), labels[0])
        cpo_ok = True
    except Exception:  # noqa: BLE001 - any certification failure is reported
        cpo_ok = False
    return {
        "elements": len(elems),
        "bijective": injective and surjective,
        "pairs_checked": len(elems) ** 2,
        "homomorphism_failures": hom_fail,
        "order_failures": order_fail,
        "cpo": cpo_ok,
        "passed": injective and surjective and not hom_fail and not order_fail and cpo_ok,
    }
