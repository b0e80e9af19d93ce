"""Interpretation of λ-terms in a truncated tower and the model-clause checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lam
from .lam import App, Lam, Var, as_term, debruijn, free_vars, fresh, substitute
from .tower import TowerElement, apply, fun_to_elem


class Environment:
    """Assignment ρ: variables → tower elements; unlisted names map to ⊥."""

    def __init__(self, tower, values=None):
        self.tower = tower
        self.values = dict(values or {})
        for name, v in self.values.items():
            if not isinstance(v, TowerElement) or v.tower is not tower:
                raise ValueError(f"value for {name!r} is not an element of this tower")

    def __call__(self, name):
        return self.values.get(name) or self.tower.bottom()

    def extend(self, name, value):
        """[value/name]ρ"""
        values = dict(self.values)
        values[name] = value
        return Environment(self.tower, values)

    def restrict_key(self, names):
        return tuple(sorted((n, self(n).top) for n in names))

    def __repr__(self):
        inner = ", ".join(f"{k}={v.label}" for k, v in sorted(self.values.items()))
        return f"Environment({inner})"

    @classmethod
    def from_labels(cls, tower, mapping):
        from .tower import make_element
        return cls(tower, {k: make_element(tower, v) for k, v in mapping.items()})


def interpret(term, env, tower=None, memo=None):
    """⟦term⟧ρ: variables via ρ, application via •, abstraction via F⁻¹.

    Memoized on (nameless term, ρ restricted to the free variables).
    """
    term = as_term(term)
    if tower is None:
        tower = env.tower
    if memo is None:
        memo = {}
    return _interp(term, env, tower, memo)


def _interp(term, env, tower, memo):
    key = (debruijn(term), env.restrict_key(free_vars(term)))
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(term, Var):
        out = env(term.name)
    elif isinstance(term, App):
        out = apply(_interp(term.fn, env, tower, memo), _interp(term.arg, env, tower, memo))
    else:
        out = fun_to_elem(tower, lambda d: _interp(term.body, env.extend(term.var, d), tower, memo))
    memo[key] = out
    return out


def environments(tower, names, limit=1000):
    """Every assignment of tower elements to ``names`` (deterministic order).

    When the full product exceeds ``limit`` an evenly strided subset is used.
    """
    names = sorted(names)
    elems = tower.elements()
    total = len(elems) ** len(names)
    stride = max(1, -(-total // limit))
    if stride == 1:
        for combo in itertools.product(elems, repeat=len(names)):
            yield Environment(tower, dict(zip(names, combo)))
        return
    # decode the strided product indices directly (last name varies fastest)
    for i in range(0, total, stride):
        combo = []
        for _ in names:
            i, r = divmod(i, len(elems))
            combo.append(elems[r])
        yield Environment(tower, dict(zip(names, reversed(combo))))


# ---------------------------------------------------------------- predicates

@dataclass(frozen=True)
class EqualityPredicate:
    name: str
    test: object  # callable (a, b) -> bool

    def __call__(self, a, b):
        return self.test(a, b)


def strict_equality():
    return EqualityPredicate("strict", lambda a, b: a == b)


def level_bounded(level):
    return EqualityPredicate(
        f"level<={level}", lambda a, b: a.components[: level + 1] == b.components[: level + 1]
    )


def path_component(tower):
    """a =_h b iff a and b lie in one path component of the tower's space."""
    from .homotopy import component_map

    comp = component_map(tower.space.poset)
    return EqualityPredicate("path-component", lambda a, b: comp[a.label] == comp[b.label])


def default_predicates(tower):
    return [strict_equality(), level_bounded(max(tower.N - 2, 0)), path_component(tower)]


# ---------------------------------------------------------------- clause checks

CLAUSES = ("1", "2", "3", "4", "5", "6", "ext")


def subterms(t):
    yield t
    if isinstance(t, App):
        yield from subterms(t.fn)
        yield from subterms(t.arg)
    elif isinstance(t, Lam):
        yield from subterms(t.body)


def _unique(terms):
    seen, out = set(), []
    for t in terms:
        key = debruijn(t)
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


class _Tally:
    def __init__(self):
        self.checked = 0
        self.vacuous = 0
        self.failures = []

    def record(self, ok, witness):
        self.checked += 1
        if not ok:
            self.failures.append(witness)

    def as_dict(self):
        d = {"checked": self.checked, "failed": len(self.failures),
             "passed": not self.failures, "witnesses": self.failures[:3]}
        if self.vacuous:
            d["vacuous"] = self.vacuous
        return d


def check_model_clauses(tower, corpus, predicates=None, env_limit=1000):
    """Per-clause pass/fail table of the homotopic λ-model conditions.

    ``corpus`` has ``terms`` (strings or Terms), ``clause6`` triples
    ``[x, P, Q]`` and ``eta`` terms M.  Clauses 1 and 4 are equalities and
    always use strict equality; the rest use each plugged predicate.
    """
    predicates = predicates or default_predicates(tower)
    terms = [as_term(t) for t in corpus["terms"]]
    subs = _unique(s for t in terms for s in subterms(t))
    apps = [s for s in subs if isinstance(s, App)]
    lams = [s for s in subs if isinstance(s, Lam)]
    variables = sorted({n for t in terms for n in lam.all_names(t)})
    elems = tower.elements()
    memo = {}

    def ev(t, env):
        return interpret(t, env, tower, memo)

    report = {"tower": {"k": tower.k, "N": tower.N}, "predicates": {}}
    exact = {"1": _Tally(), "4": _Tally()}
    for name in sorted({n for t in terms for n in free_vars(t)}):
        for d in elems:
            env = Environment(tower, {name: d})
            exact["1"].record(ev(Var(name), env) == d, [name, d.label])
    top = elems[-1]
    for t in terms:
        fv = free_vars(t)
        others = [v for v in variables if v not in fv] + ["_other"]
        for env in environments(tower, fv, env_limit):
            sigma = Environment(tower, {**env.values, **{v: top for v in others}})
            a = interpret(t, env, tower, {})
            b = interpret(t, sigma, tower, {})
            exact["4"].record(a == b, [str(t), repr(env)])

    for pred in predicates:
        table = {c: _Tally() for c in CLAUSES}
        table["1"], table["4"] = exact["1"], exact["4"]
        for pq in apps:
            for env in environments(tower, free_vars(pq), env_limit):
                ok = pred(ev(pq, env), apply(ev(pq.fn, env), ev(pq.arg, env)))
                table["2"].record(ok, [str(pq), repr(env)])
        for lx in lams:
            for env in environments(tower, free_vars(lx), env_limit):
                f = ev(lx, env)
                for d in elems:
                    ok = pred(apply(f, d), ev(lx.body, env.extend(lx.var, d)))
                    table["3"].record(ok, [str(lx), repr(env), d.label])
        for lx in lams:
            y = fresh(lx.var, lam.all_names(lx) | free_vars(lx))
            renamed = Lam(y, substitute(lx.body, lx.var, Var(y)))
            for env in environments(tower, free_vars(lx), env_limit):
                ok = pred(interpret(lx, env, tower, {}), interpret(renamed, env, tower, {}))
                table["5"].record(ok, [str(lx), str(renamed), repr(env)])
        for x, p, q in corpus.get("clause6", []):
            p, q = as_term(p), as_term(q)
            lp, lq = Lam(x, p), Lam(x, q)
            for env in environments(tower, free_vars(lp) | free_vars(lq), env_limit):
                premise = all(pred(ev(p, env.extend(x, d)), ev(q, env.extend(x, d))) for d in elems)
                if not premise:
                    table["6"].vacuous += 1
                    continue
                table["6"].record(pred(ev(lp, env), ev(lq, env)), [str(lp), str(lq), repr(env)])
        for m in corpus.get("eta", []):
            m = as_term(m)
            x = fresh("x", lam.all_names(m))
            eta = Lam(x, App(m, Var(x)))
            for env in environments(tower, free_vars(m), env_limit):
                table["ext"].record(pred(ev(eta, env), ev(m, env)), [str(eta), str(m), repr(env)])
        report["predicates"][pred.name] = {c: table[c].as_dict() for c in CLAUSES}
    return report


def clause_table(report):
    """Human-readable table of a clause report."""
    names = list(report["predicates"])
    width = max(len(n) for n in names) + 2
    lines = ["clause  " + "".join(n.ljust(width) for n in names)]
    for c in CLAUSES:
        cells = []
        for n in names:
            r = report["predicates"][n][c]
            cells.append(f"{'pass' if r['passed'] else 'FAIL'} {r['checked'] - r['failed']}/{r['checked']}".ljust(width))
        lines.append(f"{c:<8}" + "".join(cells))
    return "\n".join(lines)


# ---------------------------------------------------------------- β-soundness

def beta_pairs(terms):
    """Every (M, M') with M ▷1β M' for M in ``terms``."""
    out = []
    for t in terms:
        t = as_term(t)
        for _, r in lam.beta_step(t):
            out.append((t, r))
    return out


def weak_beta_soundness(tower, pairs, env_limit=1000):
    """Compare ⟦M⟧ and ⟦M'⟧ per level for each β-pair over all environments.

    Returns one row per pair with the lowest disagreeing level (None if the
    interpretations agree everywhere) aggregated over environments.
    """
    rows = []
    for m, m2 in pairs:
        fv = free_vars(m) | free_vars(m2)
        lowest = None
        envs = 0
        for env in environments(tower, fv, env_limit):
            envs += 1
            a, b = interpret(m, env, tower), interpret(m2, env, tower)
            for n in range(tower.N + 1):
                if a.components[n] != b.components[n]:
                    lowest = n if lowest is None else min(lowest, n)
                    break
        rows.append({"redex": str(m), "reduct": str(m2), "environments": envs,
                     "first_disagreement": lowest})
    return rows
