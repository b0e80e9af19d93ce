"""The ten end-to-end checks, shared by the CLI and the test suite.

Each check returns a CheckResult; ``details`` carries the evidence that was
compared so failures are self-explaining.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import corpus
from .groupoid import axioms_pass, build_D_groupoid, check_iso_F, check_strict_axioms
from .homotopy import is_cone, pi1, verify_contraction_preimage
from .lam import StepKind, free_vars, parse, proof_concat, proof_inverse
from .model import Environment, beta_pairs, check_model_clauses, clause_table, weak_beta_soundness
from .order import scott_opens
from .proofpaths import interpret_proof, proofs_equal_model
from .steppath import check_continuity, concat1, homotopic, product_r, restrict, reverse
from .tower import build_tower


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}"


def scott_topology(seed=0):
    spaces = {name: corpus.load_poset(corpus.data_path(name))
              for name in ("nplus2", "lattice_L", "chain2", "pseudo_circle_bot")}
    for i, cpo in enumerate(corpus.random_posets_with_bottom(5, 7, seed)):
        spaces[f"random{i}"] = cpo
    rows = {}
    for name, cpo in spaces.items():
        literal = scott_opens(cpo, "literal")
        upsets = scott_opens(cpo, "upsets")
        carrier = frozenset(cpo.elements)
        bottom_free = all(cpo.bottom not in A for A in literal.opens if A != carrier)
        rows[name] = {"size": len(cpo), "opens": len(literal.opens),
                      "agree": set(literal.opens) == set(upsets.opens), "bottom_in_no_proper_open": bottom_free}
    ok = all(r["agree"] and r["bottom_in_no_proper_open"] for r in rows.values())
    return CheckResult(1, "Scott opens: literal enumeration = up-sets; ⊥ in no proper open", ok, rows)


def _brute_monotone_count(tower, n):
    """Count monotone self-maps of level n over the full product of graphs."""
    size = tower.size(n)
    le = lambda i, j: tower.le(n, i, j)  # noqa: E731
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j and le(i, j)]
    return sum(1 for g in itertools.product(range(size), repeat=size) if all(le(g[i], g[j]) for i, j in pairs))


def tower_sizes():
    expected = {(1, 2): [2, 3, 10], (2, 1): [3, 11]}
    rows = {}
    for (k, N), want in expected.items():
        t = build_tower(k, N)
        brute = [t.size(0)] + [_brute_monotone_count(t, n) for n in range(N)]
        rows[f"k={k},N={N}"] = {"sizes": t.sizes(), "brute_force": brute, "expected": want}
    ok = all(r["sizes"] == r["brute_force"] == r["expected"] for r in rows.values())
    return CheckResult(2, "tower sizes 2,3,10 (k=1,N=2) and 3,11 (k=2,N=1)", ok, rows)


def projection_pairs():
    rows = {}
    for k, N in ((1, 2), (2, 1)):
        t = build_tower(k, N)
        retract = sum(t.psi[n][t.phi[n][d]] != d for n in range(N) for d in range(t.size(n)))
        below = sum(not t.le(n + 1, t.phi[n][t.psi[n][x]], x) for n in range(N) for x in range(t.size(n + 1)))
        rows[f"k={k},N={N}"] = {"psi_phi_not_id": retract, "phi_psi_not_below_id": below}
    ok = all(not any(r.values()) for r in rows.values())
    return CheckResult(3, "projection pairs: ψ∘φ = id, φ∘ψ ⊑ id", ok, rows)


def contractibility():
    rows = {}
    spaces = {name: corpus.load_space(name) for name in corpus.CPOS}
    spaces["tower k=1,N=2"] = build_tower(1, 2).space
    for name, space in spaces.items():
        cone, apex = is_cone(space)
        group = pi1(space)
        rows[name] = {"cone": cone, "apex": apex, "pi1": group.describe(),
                      "contraction_preimage": verify_contraction_preimage(space)}
    control = pi1(corpus.load_space("pseudo_circle"))
    ok = all(r["cone"] and r["pi1"] == "trivial" and r["contraction_preimage"] for r in rows.values())
    ok = ok and control.describe() == "free rank 1"
    rows["pseudo_circle (control)"] = {"pi1": control.describe(), "presentation": str(control)}
    return CheckResult(4, "c.p.o.s are cones with trivial π1 and open contraction preimages; pseudo-circle π1 free rank 1", ok, rows)


def lattice_paths():
    L = corpus.load_space("lattice_L")
    P = corpus.lattice_paths(L)
    rows = {"continuous": {name: bool(check_continuity(p)) for name, p in P.items()}}
    faces = {}
    for a, b in (("0", "1"), ("1", "2"), ("0", "2")):
        via_top = concat1(P[f"p[{a}->top]"], reverse(P[f"p[{b}->top]"]))
        via_bot = concat1(P[f"p[{a}->bot]"], reverse(P[f"p[{b}->bot]"]))
        square = P[f"p[{a}=>{b}]"]
        q_a = concat1(reverse(P[f"p[{a}->top]"]), P[f"p[{a}->bot]"])
        q_b = concat1(reverse(P[f"p[{b}->top]"]), P[f"p[{b}->bot]"])
        faces[f"{a}=>{b}"] = {
            "p[t1=0] = via top": restrict(square, 1, 0) == via_top,
            "p[t1=1] = via bottom": restrict(square, 1, 1) == via_bot,
            "q[t1=0] = q_a": restrict(P[f"q[{a}=>{b}]"], 1, 0) == q_a,
            "q[t1=1] = q_b": restrict(P[f"q[{a}=>{b}]"], 1, 1) == q_b,
        }
    rows["faces"] = faces
    p_prod = product_r(P["p[0=>1]"], P["p[1=>2]"], 0)
    q_prod = product_r(P["q[0=>1]"], P["q[1=>2]"], 1)
    rows["products"] = {
        "p01 *0 p12 continuous": bool(check_continuity(p_prod)),
        "q01 *1 q12 continuous": bool(check_continuity(q_prod)),
        "p01 *0 p12 =h p02": homotopic(p_prod, P["p[0=>2]"], L),
        "q01 *1 q12 =h q02": homotopic(q_prod, P["q[0=>2]"], L),
    }
    ok = all(rows["continuous"].values()) and all(v for f in faces.values() for v in f.values()) \
        and all(v is True for v in rows["products"].values())
    return CheckResult(5, "lattice step paths: continuity, faces, products and =h", ok, rows)


def strict_groupoid(levels=3):
    rows = {}
    for name in ("lattice_L", "nplus2", "point"):
        report = check_strict_axioms(build_D_groupoid(corpus.load_space(name), levels))
        rows[name] = {"axioms": {c: report[c]["passed"] for c in "abcdefg"},
                      "instances": sum(report[c]["checked"] for c in "abcdefg"),
                      "globular": report["globular"]["passed"],
                      "diagonal": all(report["diagonal"].values()),
                      "ok": axioms_pass(report)}
    ok = all(r["ok"] and r["diagonal"] for r in rows.values())
    return CheckResult(6, f"strict ∞-groupoid axioms a–g at N={levels}; pullbacks are diagonal", ok, rows)


def cell_isomorphism():
    report = check_iso_F(build_tower(1, 2))
    ok = report["passed"] and report["elements"] == 10 and report["pairs_checked"] == 100
    return CheckResult(7, "cell-sequence map F: bijective •-homomorphism with order transfer (k=1,N=2)", ok, report)


def model_clauses():
    t = build_tower(1, 2)
    report = check_model_clauses(t, corpus.lambda_corpus())
    strict = report["predicates"]["strict"]
    homot = report["predicates"]["path-component"]
    ok = all(strict[c]["passed"] for c in ("1", "4", "5")) and \
        all(homot[c]["passed"] for c in ("2", "3", "6", "ext"))
    return CheckResult(8, "model clauses 1,4,5 exact; 2,3,6,ext up to path component", ok,
                       {"table": clause_table(report), "report": report})


def proof_semantics(seed=0, concatenations=20):
    cfg, env_labels, proofs = corpus.proof_corpus()
    t = build_tower(cfg["k"], cfg["N"])
    env = Environment.from_labels(t, env_labels)
    names = sorted(proofs)
    comparisons = []
    for a, b in itertools.combinations_with_replacement(names, 2):
        P, Q = proofs[a], proofs[b]
        if str(P.first) != str(Q.first) or str(P.last) != str(Q.last):
            continue
        r = proofs_equal_model(P, Q, env, t)
        r["pair"] = [a, b]
        r["agrees_with_lengths"] = r["length_equal"] == (P.length == Q.length)
        comparisons.append(r)
    rng = random.Random(seed)
    additivity = []
    by_end = {}
    for name in names:
        by_end.setdefault(str(proofs[name].first), []).append(name)
    for _ in range(concatenations):
        a = rng.choice(names)
        # continue from the end of a with a proof starting there, or with a's inverse
        P = proofs[a]
        Q = rng.choice([proof_inverse(P)] + [proofs[b] for b in by_end.get(str(P.last), [])])
        PQ = proof_concat(P, Q)
        lhs = interpret_proof(PQ, env, t).periods
        rhs = interpret_proof(P, env, t).periods + interpret_proof(Q, env, t).periods
        additivity.append(lhs == rhs)
    equations = {str(proofs[n].first) + " = " + str(proofs[n].last) for n in names}
    ok = len(names) >= 6 and len(equations) >= 3 and all(r["agrees_with_lengths"] for r in comparisons) \
        and all(r["homotopic"] is True for r in comparisons) and all(additivity)
    return CheckResult(9, "proof semantics: length verdicts, homotopy triviality, period additivity", ok,
                       {"proofs": len(names), "equations": len(equations), "comparisons": comparisons,
                        "additivity": f"{sum(additivity)}/{len(additivity)}"})


def corpus_beta_pairs():
    """β-steps out of the λ corpus terms and the forward steps of the proof chains."""
    pairs = beta_pairs(corpus.lambda_corpus()["terms"])
    _, _, proofs = corpus.proof_corpus()
    for p in proofs.values():
        for (m, _), (m2, kind) in zip(p.steps, p.steps[1:]):
            if kind is StepKind.BETA_FORWARD:
                pairs.append((m, m2))
            elif kind is StepKind.BETA_BACKWARD:
                pairs.append((m2, m))
    seen, out = set(), []
    for m, m2 in pairs:
        key = (str(m), str(m2))
        if key not in seen:
            seen.add(key)
            out.append((m, m2))
    return out


def weak_beta():
    t = build_tower(1, 2)
    rows = weak_beta_soundness(t, corpus_beta_pairs())
    bad = [r for r in rows if r["first_disagreement"] == 0]
    closed = [r for r in rows if not free_vars_of(r)]
    details = {"pairs": len(rows), "level0_disagreements": bad,
               "closed_pairs": len(closed),
               "closed_level0_disagreements": sum(r["first_disagreement"] == 0 for r in closed),
               "rows": rows}
    return CheckResult(10, "weak β-soundness: level-0 agreement on every corpus β-pair (k=1,N=2)", not bad, details)


def free_vars_of(row):
    return free_vars(parse(row["redex"]))


CHECKS = (scott_topology, tower_sizes, projection_pairs, contractibility, lattice_paths,
          strict_groupoid, cell_isomorphism, model_clauses, proof_semantics, weak_beta)


_SEEDED = {scott_topology, proof_semantics}


def run_one(number, seed=0):
    check = CHECKS[number - 1]
    return check(seed) if check in _SEEDED else check()


def run_all(seed=0):
    return [run_one(i, seed) for i in range(1, len(CHECKS) + 1)]
