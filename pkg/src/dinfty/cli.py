"""Command line: ``dinfty [options] <area> <action> ...``.

Exit status 0 on success, 1 when a verification fails or a library error
is raised (reported as JSON on stdout), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import acceptance, corpus
from .errors import DinftyError
from .order import DEFAULT_SIZE_LIMIT, hasse_dot, poset_to_json, scott_opens


@dataclass(frozen=True)
class Config:
    k: int = 1
    N: int = 2
    size_limit: int = DEFAULT_SIZE_LIMIT
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 1 <= self.N <= 4:
            raise ValueError("N must lie in 1..4")
        if self.format not in ("text", "json", "dot"):
            raise ValueError(f"unknown format {self.format!r}")


class UsageError(Exception):
    pass


class Failed(Exception):
    """A verification ran and did not hold."""

    def __init__(self, payload):
        super().__init__(payload.get("message", "verification failed"))
        self.payload = payload


def _emit(cfg, payload, text=None):
    if cfg.format == "json" or text is None:
        print(json.dumps(payload, ensure_ascii=False, indent=2, default=str))
    else:
        print(text)


def _tower(cfg):
    from .tower import build_tower
    return build_tower(cfg.k, cfg.N, cfg.size_limit)


# ---------------------------------------------------------------- poset

def cmd_poset(cfg, args):
    from .order import certify_cpo, load_poset

    obj = load_poset(corpus.data_path(args.file) if args.file in corpus.SPACES else args.file)
    if args.action == "check":
        payload = {"elements": len(obj), "cpo": hasattr(obj, "bottom")}
        if not payload["cpo"]:
            try:
                certify_cpo(obj)
                payload["cpo"] = True
            except DinftyError as exc:
                payload["reason"] = str(exc)
        _emit(cfg, payload, f"{len(obj)} elements, c.p.o.: {payload['cpo']}")
    elif args.action == "opens":
        space = scott_opens(obj, args.method) if hasattr(obj, "bottom") else corpus.as_space(obj)
        opens = [sorted(A, key=space.poset.index) for A in space.opens]
        _emit(cfg, {"count": len(opens), "opens": opens},
              "\n".join("{" + ", ".join(A) + "}" for A in opens) + f"\n{len(opens)} opens")
    else:
        if cfg.format == "json":
            _emit(cfg, poset_to_json(obj))
        else:
            print(hasse_dot(obj), end="")


# ---------------------------------------------------------------- tower

def cmd_tower(cfg, args):
    from .tower import make_element, tower_to_json

    t = _tower(cfg)
    if args.action == "build":
        data = tower_to_json(t)
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(data, fh, indent=1)
                fh.write("\n")
        _emit(cfg, {"k": t.k, "N": t.N, "sizes": t.sizes()}, f"k={t.k} N={t.N} sizes {t.sizes()}")
    else:
        if args.element:
            e = make_element(t, args.element)
            _emit(cfg, {"element": e.label, "components": e.labels()},
                  f"{e.label}: " + " ← ".join(reversed(e.labels())))
        else:
            rows = [{"element": e.label, "components": e.labels()} for e in t.elements()]
            _emit(cfg, {"sizes": t.sizes(), "elements": rows},
                  "\n".join(f"{r['element']}: {r['components']}" for r in rows))


# ---------------------------------------------------------------- lambda

def _env(tower, pairs):
    from .model import Environment
    mapping = {}
    for item in pairs or []:
        name, _, label = item.partition("=")
        if not label:
            raise UsageError(f"environment entries look like x=f#3, got {item!r}")
        mapping[name] = label
    return Environment.from_labels(tower, mapping)


def cmd_lambda(cfg, args):
    from .lam import normalize, parse
    from .model import check_model_clauses, clause_table, interpret

    if args.action == "normalize":
        r = normalize(parse(args.term), args.fuel)
        _emit(cfg, {"term": str(r.term), "steps": r.steps, "exhausted": r.exhausted},
              f"{r.term}  ({r.steps} steps{', fuel exhausted' if r.exhausted else ''})")
    elif args.action == "eval":
        t = _tower(cfg)
        v = interpret(parse(args.term), _env(t, args.env))
        _emit(cfg, {"term": args.term, "value": v.label, "components": v.labels()},
              f"{v.label}  components {v.labels()}")
    else:
        t = _tower(cfg)
        data = corpus.lambda_corpus()
        if args.corpus:
            with open(args.corpus) as fh:
                data = json.load(fh)
        report = check_model_clauses(t, data)
        _emit(cfg, report, clause_table(report))


# ---------------------------------------------------------------- homotopy

def cmd_homotopy(cfg, args):
    from .homotopy import contraction_preimages, is_cone, pi0, pi1

    space = corpus.load_space(args.file)
    if args.action == "pi0":
        n = pi0(space)
        _emit(cfg, {"components": n}, str(n))
    elif args.action == "pi1":
        p = pi1(space, args.base)
        _emit(cfg, p.to_json(), f"{p.describe()}\n{p}")
    else:
        cone, apex = is_cone(space)
        payload = {"cone": cone, "apex": apex}
        if space.bottom is not None:
            payload["contraction_preimages"] = contraction_preimages(space)
        _emit(cfg, payload, f"contractible (cone with apex {apex})" if cone else "no cone certificate")
        if not cone:
            raise Failed({"message": "no contractibility certificate", "space": args.file})


# ---------------------------------------------------------------- groupoid

def cmd_groupoid(cfg, args):
    from .groupoid import axioms_pass, build_D_groupoid, check_iso_F, check_strict_axioms, groupoid_dot

    if args.action == "iso":
        report = check_iso_F(_tower(cfg), args.levels)
        _emit(cfg, report, "\n".join(f"{k}: {v}" for k, v in report.items()))
        if not report["passed"]:
            raise Failed({"message": "isomorphism check failed", "report": report})
        return
    g = build_D_groupoid(corpus.load_space(args.space), args.levels)
    if args.action == "build":
        if cfg.format == "dot":
            print(groupoid_dot(g), end="")
        else:
            sizes = [len(c) for c in g.globular.carriers]
            _emit(cfg, {"levels": args.levels, "carrier_sizes": sizes}, f"carrier sizes {sizes}")
        return
    report = check_strict_axioms(g)
    lines = [f"({c}) {report[c]['name']}: {'pass' if report[c]['passed'] else 'FAIL'} "
             f"[{report[c]['checked']} instances]" for c in "abcdefg"]
    lines.append(f"globular: {'pass' if report['globular']['passed'] else 'FAIL'}")
    _emit(cfg, report, "\n".join(lines))
    if not axioms_pass(report):
        raise Failed({"message": "strict axioms fail", "report": report})


# ---------------------------------------------------------------- proof

def cmd_proof(cfg, args):
    from .lam import load_proof, make_proof, proof_to_json
    from .proofpaths import proofs_equal_model
    from .tower import load_tower

    if args.action == "make":
        steps = []
        for i, item in enumerate(args.steps):
            kind, sep, term = item.partition(":")
            if not sep:
                kind, term = ("start" if i == 0 else "beta"), item
            steps.append((term, kind))
        _emit(cfg, proof_to_json(make_proof(steps)))
        return
    P, Q = load_proof(args.p), load_proof(args.q)
    t = load_tower(args.tower) if args.tower else _tower(cfg)
    r = proofs_equal_model(P, Q, _env(t, args.env), t)
    _emit(cfg, r, f"equation: {r['equation']}\nperiods: {r['periods'][0]} vs {r['periods'][1]}\n"
                  f"length semantics: {'equal' if r['length_equal'] else 'different'}\n"
                  f"homotopy semantics: {'homotopic' if r['homotopic'] else r['homotopic']}")


# ---------------------------------------------------------------- verify

def cmd_verify(cfg, args):
    results = acceptance.run_all(cfg.seed)
    if cfg.format == "json":
        _emit(cfg, [{"criterion": r.number, "title": r.title, "passed": r.passed} for r in results])
    else:
        for r in results:
            print(r.line())
    failed = [r.number for r in results if not r.passed]
    if failed:
        raise Failed({"message": "acceptance checks failed", "failed": failed,
                      "details": {r.number: r.details for r in results if not r.passed}})


def build_parser():
    ap = argparse.ArgumentParser(prog="dinfty", description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=1, help="numerals in the base c.p.o.")
    ap.add_argument("--N", type=int, default=2, help="tower truncation level (1..4)")
    ap.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)
    ap.add_argument("--format", choices=("text", "json", "dot"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="area", required=True)

    p = sub.add_parser("poset")
    p.add_argument("action", choices=("check", "opens", "hasse"))
    p.add_argument("file")
    p.add_argument("--method", choices=("literal", "upsets"), default="literal")
    p.set_defaults(run=cmd_poset)

    p = sub.add_parser("tower")
    p.add_argument("action", choices=("build", "inspect"))
    p.add_argument("--out")
    p.add_argument("--element")
    p.set_defaults(run=cmd_tower)

    p = sub.add_parser("lambda")
    p.add_argument("action", choices=("eval", "normalize", "clauses"))
    p.add_argument("term", nargs="?")
    p.add_argument("--env", action="append", metavar="NAME=LABEL")
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--corpus")
    p.set_defaults(run=cmd_lambda)

    p = sub.add_parser("homotopy")
    p.add_argument("action", choices=("pi0", "pi1", "contractible"))
    p.add_argument("file")
    p.add_argument("--base")
    p.set_defaults(run=cmd_homotopy)

    p = sub.add_parser("groupoid")
    p.add_argument("action", choices=("build", "verify", "iso"))
    p.add_argument("--space", default="lattice_L")
    p.add_argument("--levels", type=int, default=3)
    p.set_defaults(run=cmd_groupoid)

    p = sub.add_parser("proof")
    p.add_argument("action", choices=("make", "compare"))
    p.add_argument("p", nargs="?")
    p.add_argument("q", nargs="?")
    p.add_argument("--step", dest="steps", action="append", default=[], metavar="KIND:TERM")
    p.add_argument("--tower")
    p.add_argument("--env", action="append", metavar="NAME=LABEL")
    p.set_defaults(run=cmd_proof)

    p = sub.add_parser("verify")
    p.add_argument("action", choices=("all",))
    p.set_defaults(run=cmd_verify)
    return ap


def _usage_check(ap, args):
    if args.area == "lambda" and args.action in ("eval", "normalize") and not args.term:
        ap.error(f"lambda {args.action} needs a term")
    if args.area == "proof" and args.action == "compare" and not (args.p and args.q):
        ap.error("proof compare needs two proof files")
    if args.area == "proof" and args.action == "make" and not args.steps:
        ap.error("proof make needs at least one --step")


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    _usage_check(ap, args)
    try:
        cfg = Config(args.k, args.N, args.size_limit, args.format, args.seed)
    except ValueError as exc:
        ap.error(str(exc))
    try:
        args.run(cfg, args)
    except UsageError as exc:
        ap.error(str(exc))
    except Failed as exc:
        print(json.dumps({"error": "VerificationFailed", **exc.payload, "config": asdict(cfg)},
                         ensure_ascii=False, default=str))
        return 1
    except DinftyError as exc:
        print(json.dumps(exc.to_json(), ensure_ascii=False, default=str))
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": "FileNotFound", "message": str(exc)}))
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
