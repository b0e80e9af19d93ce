"""Homotopy invariants of finite spaces through their order complexes.

A finite poset with the up-set topology is weakly equivalent to its order
complex (chains as simplices), so π0 and π1 are read off the comparability
graph and its triangles.  π1 is given as an edge-path presentation over a
BFS spanning tree and simplified by Tietze moves.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import networkx as nx

from .errors import EndpointMismatch, NotACpo, NotConnected
from .order import as_poset, bits


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    facets: tuple  # frozensets, pairwise ⊆-incomparable

    def simplices(self, dim):
        out = set()
        from itertools import combinations
        for f in self.facets:
            for s in combinations(sorted(f), dim + 1):
                out.add(frozenset(s))
        return sorted(out, key=sorted)

    def to_json(self):
        return {"vertices": list(self.vertices), "facets": [sorted(f) for f in self.facets]}


def order_complex(space):
    """Facets = maximal chains of the order."""
    poset = as_poset(space)
    n = len(poset)
    strict_up = [poset.up[i] & ~(1 << i) for i in range(n)]
    minimal = [i for i in range(n) if poset.down[i] == 1 << i]
    covers = {i: [j for j in bits(strict_up[i]) if not (strict_up[i] & poset.down[j] & ~(1 << j))]
              for i in range(n)}
    facets = []

    def walk(i, acc):
        if not covers[i]:
            facets.append(frozenset(poset.elements[j] for j in acc))
            return
        for j in covers[i]:
            walk(j, acc + [j])

    for i in minimal:
        walk(i, [i])
    return SimplicialComplex(poset.elements, tuple(sorted(set(facets), key=lambda f: sorted(f))))


def comparability_graph(space):
    poset = as_poset(space)
    g = nx.Graph()
    g.add_nodes_from(poset.elements)
    g.add_edges_from((x, y) for x, y in poset.leq if x != y)
    return g


def component_map(space):
    """label → index of its path component (components ordered by first element)."""
    poset = as_poset(space)
    g = comparability_graph(poset)
    comps = sorted(nx.connected_components(g), key=lambda c: min(poset.index(x) for x in c))
    return {x: i for i, c in enumerate(comps) for x in c}


def pi0(space):
    return len(set(component_map(space).values()))


# ---------------------------------------------------------------- words

def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(word):
    return tuple(-x for x in reversed(word))


def _substitute(word, gen, replacement):
    out = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(invert(replacement))
        else:
            out.append(x)
    return free_reduce(out)


@dataclass
class GroupPresentation:
    """⟨generators | relators⟩ with words as tuples of ±(generator id).

    ``names`` maps generator ids to display names; ``substitution`` expresses
    every generator of the unsimplified presentation as a word in the
    surviving ones, so edge-path words can be carried across the moves.
    """

    generators: tuple
    relators: tuple
    names: dict
    substitution: dict = field(default_factory=dict)
    classification: str = "unresolved"
    rank: int | None = None
    base: str | None = None
    edges: dict = field(default_factory=dict)  # (u, v) → generator id

    def spell(self, word):
        if not word:
            return "1"
        return "".join(self.names[abs(x)] + ("" if x > 0 else "^-1") for x in word)

    def __str__(self):
        gens = ",".join(self.names[g] for g in self.generators)
        rels = ",".join(self.spell(r) for r in self.relators)
        return f"⟨{gens} | {rels}⟩"

    def describe(self):
        if self.classification == "trivial":
            return "trivial"
        if self.classification == "free":
            return f"free rank {self.rank}"
        return "unresolved"

    def to_json(self):
        return {
            "base": self.base,
            "generators": [self.names[g] for g in self.generators],
            "relators": [self.spell(r) for r in self.relators],
            "classification": self.classification,
            "rank": self.rank,
            "text": str(self),
        }

    def reduce(self, word):
        """Rewrite an unsimplified word into the simplified generators."""
        out = []
        for x in word:
            w = self.substitution.get(abs(x), (abs(x),))
            out.extend(w if x > 0 else invert(w))
        return free_reduce(out)

    def is_identity(self, word):
        """True/False when decidable (trivial or free group), else None."""
        if self.classification == "trivial":
            return True
        if self.classification == "free":
            return not self.reduce(word)
        return None


def tietze_simplify(generators, relators, budget=10_000):
    """Drop trivial relators and eliminate generators occurring once in a
    relator.  Deterministic: shortest relator first, then lowest generator.

    Returns (generators, relators, substitution).
    """
    gens = list(generators)
    subst = {g: (g,) for g in gens}
    rels = [cyclic_reduce(r) for r in relators]
    for _ in range(budget):
        rels = sorted({r for r in (cyclic_reduce(r) for r in rels) if r}, key=lambda r: (len(r), r))
        move = None
        for r in rels:
            for g in sorted(set(abs(x) for x in r)):
                if sum(1 for x in r if abs(x) == g) == 1:
                    move = (r, g)
                    break
            if move:
                break
        if move is None:
            break
        r, g = move
        i = next(i for i, x in enumerate(r) if abs(x) == g)
        rotated = r[i:] + r[:i]
        rest = rotated[1:]
        value = invert(rest) if rotated[0] > 0 else free_reduce(rest)
        gens.remove(g)
        rels = [_substitute(x, g, value) for x in rels if x != r]
        subst = {k: _substitute(w, g, value) for k, w in subst.items()}
    return tuple(gens), tuple(rels), subst


def pi1(space, base=None, budget=10_000):
    """Edge-path presentation of π1 at ``base`` (default ⊥ when present)."""
    poset = as_poset(space)
    if pi0(poset) != 1:
        raise NotConnected(f"space has {pi0(poset)} path components")
    if base is None:
        base = poset.least() or poset.elements[0]
    g = comparability_graph(poset)
    tree = nx.bfs_tree(g, base)
    tree_edges = {frozenset(e) for e in tree.edges()}
    idx = poset.index
    edges, names = {}, {}
    for x, y in sorted(poset.leq, key=lambda p: (idx(p[0]), idx(p[1]))):
        if x == y or frozenset((x, y)) in tree_edges:
            continue
        gid = len(edges) + 1
        edges[(x, y)] = gid
        names[gid] = f"e({x},{y})"

    def letter(u, v):
        if (u, v) in edges:
            return (edges[(u, v)],)
        if (v, u) in edges:
            return (-edges[(v, u)],)
        return ()

    relators = []
    for tri in order_complex(poset).simplices(2):
        a, b, c = sorted(tri, key=idx)
        # chain a < b < c: boundary a→b→c→a
        relators.append(letter(a, b) + letter(b, c) + letter(c, a))
    gens, rels, subst = tietze_simplify(tuple(edges.values()), relators, budget)
    if not gens:
        cls, rank = "trivial", 0
    elif not rels:
        cls, rank = "free", len(gens)
    else:
        cls, rank = "unresolved", None
    return GroupPresentation(gens, rels, names, subst, cls, rank, base, edges)


def zigzag_word(zigzag, presentation):
    """Edge-path word of a zigzag in the unsimplified generators."""
    word = []
    for u, v in zip(zigzag, zigzag[1:]):
        if u == v:
            continue
        if (u, v) in presentation.edges:
            word.append(presentation.edges[(u, v)])
        elif (v, u) in presentation.edges:
            word.append(-presentation.edges[(v, u)])
    return free_reduce(word)


def _check_zigzag(z, poset):
    for u, v in zip(z, z[1:]):
        if not (poset.le(u, v) or poset.le(v, u)):
            raise ValueError(f"zigzag entries {u!r}, {v!r} are not comparable")


def zigzag_homotopic(z1, z2, space):
    """Decide whether two zigzags with common endpoints are homotopic rel
    endpoints: True / False, or None when the group is unresolved."""
    z1, z2 = list(getattr(z1, "points", z1)), list(getattr(z2, "points", z2))
    poset = as_poset(space)
    if z1[0] != z2[0] or z1[-1] != z2[-1]:
        raise EndpointMismatch(f"zigzags run {z1[0]}→{z1[-1]} and {z2[0]}→{z2[-1]}")
    _check_zigzag(z1, poset)
    _check_zigzag(z2, poset)
    comp = component_map(poset)
    members = [x for x in poset.elements if comp[x] == comp[z1[0]]]
    sub = _subposet(poset, members)
    pres = pi1(sub, base=z1[0])
    loop = zigzag_word(z1, pres) + invert(zigzag_word(z2, pres))
    return pres.is_identity(loop)


def _subposet(poset, members):
    from .order import Poset
    if len(members) == len(poset):
        return poset
    keep = set(members)
    return Poset(members, [(x, y) for x, y in poset.leq if x in keep and y in keep])


# ---------------------------------------------------------------- contractibility

def is_cone(space):
    """(True, apex) when some element is comparable to every other."""
    poset = as_poset(space)
    for i in range(len(poset)):
        if poset.up[i] | poset.down[i] == poset.full:
            return True, poset.elements[i]
    return False, None


def contraction_preimages(space):
    """Evaluate H⁻¹(A) for H(x,0)=⊥, H(x,t)=x (t>0) on every open A.

    [0,1] is split into the pieces {0} and (0,1]; H is constant in t on each
    piece, so H⁻¹(A) is recorded as the pair of D-subsets lying over them.
    Returns one row per open with the computed pieces and the checks made.
    """
    cpo = getattr(space, "cpo", None) or (space if hasattr(space, "bottom") else None)
    if cpo is None or getattr(cpo, "bottom", None) is None:
        raise NotACpo("contraction needs a least element")
    bottom = cpo.bottom
    poset = as_poset(space)
    opens = getattr(space, "opens", None)
    if opens is None:
        from .order import scott_opens
        opens = scott_opens(cpo).opens
    carrier = frozenset(poset.elements)
    rows = []
    for A in opens:
        over_zero = frozenset(x for x in carrier if bottom in A)   # H(x,0) = ⊥
        over_rest = frozenset(x for x in carrier if x in A)        # H(x,t) = x
        proper = A != carrier
        row = {
            "open": sorted(A, key=poset.index),
            "proper": proper,
            "bottom_not_in_open": bottom not in A,
            "over_0": sorted(over_zero, key=poset.index),
            "over_(0,1]": sorted(over_rest, key=poset.index),
        }
        if proper:
            # ⊥ ∉ A forces the t = 0 slice to be empty, leaving A × (0,1]
            row["equals_A_x_(0,1]"] = (bottom not in A) and not over_zero and over_rest == A
        # open in D × [0,1]: both slices open in D, slice over 0 inside the slice over (0,1]
        row["open_in_product"] = (over_zero in opens or not over_zero) and over_rest in opens \
            and over_zero <= over_rest
        rows.append(row)
    return rows


def verify_contraction_preimage(space):
    rows = contraction_preimages(space)
    return all(r["open_in_product"] and (not r["proper"] or r["equals_A_x_(0,1]"]) for r in rows)


def higher_homotopy_certificate(space, n):
    """π_n certificate: cones are contractible, so every π_n is trivial."""
    cone, apex = is_cone(space)
    if n == 0:
        return {"n": 0, "components": pi0(space)}
    if cone:
        return {"n": n, "group": "trivial", "certificate": f"cone with apex {apex}"}
    if n == 1:
        return {"n": 1, "group": pi1(space).describe(), "certificate": "edge-path presentation"}
    return {"n": n, "group": "unverified", "certificate": None}


def presentation_json(p):
    return json.dumps(p.to_json(), ensure_ascii=False)
