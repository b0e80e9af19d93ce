"""Untyped λ-terms: parsing, capture-avoiding substitution, β-steps and
conversion proofs as explicit rewrite chains."""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass

from .errors import EndpointMismatch, InvalidStep, ParseError


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable names must be non-empty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"

    def __str__(self):
        f = f"({self.fn})" if isinstance(self.fn, Lam) else str(self.fn)
        a = str(self.arg) if isinstance(self.arg, Var) else f"({self.arg})"
        return f"{f} {a}"


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"

    def __post_init__(self):
        if not self.var:
            raise ValueError("binder names must be non-empty")

    def __str__(self):
        return f"\\{self.var}.{self.body}"


Term = Var | App | Lam


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<lam>\\|λ)|(?P<name>[A-Za-z0-9_']+)|(?P<punct>[.()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def parse(text):
    """Parse ``\\x. body`` syntax; application is left-associative.

    ``\\x y. M`` abbreviates ``\\x.\\y. M``; ``λ`` is accepted for ``\\``.
    A binder body extends as far right as possible.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind):
        nonlocal pos
        tok = tokens[pos]
        if tok[0] != kind and not (kind == "." and tok[1] == "."):
            want = "'.'" if kind == "." else kind
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        pos += 1
        return tok

    def term():
        tok = peek()
        if tok[0] == "lam":
            return abstraction()
        return application()

    def abstraction():
        nonlocal pos
        pos += 1
        names = []
        while peek()[0] == "name":
            names.append(take("name")[1])
        if not names:
            raise ParseError("expected a binder name", peek()[2])
        if peek()[1] != ".":
            raise ParseError("expected '.'", peek()[2])
        pos += 1
        body = term()
        for name in reversed(names):
            body = Lam(name, body)
        return body

    def atom():
        nonlocal pos
        tok = peek()
        if tok[0] == "name":
            pos += 1
            return Var(tok[1])
        if tok[1] == "(":
            pos += 1
            inner = term()
            if peek()[1] != ")":
                raise ParseError("expected ')'", peek()[2])
            pos += 1
            return inner
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])

    def application():
        t = atom()
        while True:
            tok = peek()
            if tok[0] == "name" or tok[1] == "(":
                t = App(t, atom())
            elif tok[0] == "lam":
                t = App(t, abstraction())
            else:
                return t

    result = term()
    if peek()[0] != "eof":
        raise ParseError(f"trailing input {peek()[1]!r}", peek()[2])
    return result


def as_term(t):
    return parse(t) if isinstance(t, str) else t


# ---------------------------------------------------------------- variables

def free_vars(t):
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    return free_vars(t.body) - {t.var}


def all_names(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return all_names(t.fn) | all_names(t.arg)
    return all_names(t.body) | {t.var}


def fresh(base, avoid):
    base = base.rstrip("'0123456789") or "v"
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(t, name, value):
    """[value/name] t, renaming binders that would capture free variables."""
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, App):
        return App(substitute(t.fn, name, value), substitute(t.arg, name, value))
    if t.var == name or name not in free_vars(t.body):
        return t
    fv = free_vars(value)
    if t.var in fv:
        new = fresh(t.var, fv | all_names(t.body) | {name})
        body = substitute(t.body, t.var, Var(new))
        return Lam(new, substitute(body, name, value))
    return Lam(t.var, substitute(t.body, name, value))


def debruijn(t, bound=()):
    """Nameless form: bound variables as indices, free ones keep their names."""
    if isinstance(t, Var):
        for i, name in enumerate(reversed(bound)):
            if name == t.name:
                return i
        return t.name
    if isinstance(t, App):
        return ("@", debruijn(t.fn, bound), debruijn(t.arg, bound))
    return ("\\", debruijn(t.body, bound + (t.var,)))


def alpha_eq(s, t):
    return debruijn(s) == debruijn(t)


# ---------------------------------------------------------------- reduction

def beta_step(t, path=()):
    """Every one-step β-reduct as ``(redex position, reduct)``.

    Positions are tuples over {"fn", "arg", "body"} from the root.
    """
    out = []
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            out.append((path, substitute(t.fn.body, t.fn.var, t.arg)))
        out.extend((p, App(r, t.arg)) for p, r in beta_step(t.fn, path + ("fn",)))
        out.extend((p, App(t.fn, r)) for p, r in beta_step(t.arg, path + ("arg",)))
    elif isinstance(t, Lam):
        out.extend((p, Lam(t.var, r)) for p, r in beta_step(t.body, path + ("body",)))
    return out


def reduces_to(s, t):
    """s ▷1β t up to α."""
    target = debruijn(t)
    return any(debruijn(r) == target for _, r in beta_step(s))


def _leftmost(t):
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return substitute(t.fn.body, t.fn.var, t.arg)
        r = _leftmost(t.fn)
        if r is not None:
            return App(r, t.arg)
        r = _leftmost(t.arg)
        return None if r is None else App(t.fn, r)
    if isinstance(t, Lam):
        r = _leftmost(t.body)
        return None if r is None else Lam(t.var, r)
    return None


@dataclass(frozen=True)
class NormalizeResult:
    term: Term
    steps: int
    exhausted: bool  # fuel ran out before a normal form was reached


def normalize(t, fuel=1000):
    """Normal-order reduction with a step budget."""
    t = as_term(t)
    for steps in range(fuel + 1):
        r = _leftmost(t)
        if r is None:
            return NormalizeResult(t, steps, False)
        if steps == fuel:
            break
        t = r
    return NormalizeResult(t, fuel, True)


# ---------------------------------------------------------------- proofs

class StepKind(enum.Enum):
    START = "start"
    BETA_FORWARD = "beta"
    BETA_BACKWARD = "beta-1"
    ALPHA = "alpha"

    def inverse(self):
        return {StepKind.BETA_FORWARD: StepKind.BETA_BACKWARD,
                StepKind.BETA_BACKWARD: StepKind.BETA_FORWARD}.get(self, self)


@dataclass(frozen=True)
class ConversionProof:
    """M = N0 =β N1 =β ... =β Nn = N as a validated chain.

    Build with :func:`make_proof`; ``length`` is the number of conversion
    steps t(P).
    """

    steps: tuple  # ((Term, StepKind), ...)

    @property
    def terms(self):
        return [t for t, _ in self.steps]

    @property
    def kinds(self):
        return [k for _, k in self.steps]

    @property
    def length(self):
        return len(self.steps) - 1

    @property
    def first(self):
        return self.steps[0][0]

    @property
    def last(self):
        return self.steps[-1][0]

    def __str__(self):
        marks = {StepKind.BETA_FORWARD: "▷β", StepKind.BETA_BACKWARD: "◁β", StepKind.ALPHA: "≡α"}
        parts = [str(self.first)]
        for t, k in self.steps[1:]:
            parts.append(f"{marks[k]} {t}")
        return " ".join(parts)


def _check_step(prev, cur, kind):
    if kind is StepKind.BETA_FORWARD:
        return reduces_to(prev, cur)
    if kind is StepKind.BETA_BACKWARD:
        return reduces_to(cur, prev)
    if kind is StepKind.ALPHA:
        return alpha_eq(prev, cur)
    return False


def make_proof(steps):
    """Validate a chain given as ``[(term, kind), ...]``.

    Terms may be strings; kinds may be StepKind values or their names.  The
    first kind is ignored (it is always START).  A bare list of terms is
    accepted and read as all-forward steps.
    """
    steps = list(steps)
    if not steps:
        raise ValueError("a proof needs at least one term")
    norm = []
    for i, item in enumerate(steps):
        if isinstance(item, (str, Var, App, Lam)):
            term, kind = item, StepKind.BETA_FORWARD
        else:
            term, kind = item
        kind = StepKind.START if i == 0 else _kind(kind)
        norm.append((as_term(term), kind))
    for i in range(1, len(norm)):
        (prev, _), (cur, kind) = norm[i - 1], norm[i]
        if kind is StepKind.START or not _check_step(prev, cur, kind):
            raise InvalidStep(i, prev, cur, kind.value)
    return ConversionProof(tuple(norm))


def _kind(k):
    if isinstance(k, StepKind):
        return k
    for member in StepKind:
        if k in (member.value, member.name, member.name.lower()):
            return member
    raise ValueError(f"unknown step kind {k!r}")


def proof_inverse(p):
    terms = p.terms[::-1]
    kinds = [k.inverse() for k in p.kinds[1:]][::-1]
    return make_proof([(terms[0], StepKind.START)] + list(zip(terms[1:], kinds)))


def proof_concat(p, q):
    if not alpha_eq(p.last, q.first):
        raise EndpointMismatch(f"{p.last} is not α-equal to {q.first}")
    return ConversionProof(p.steps + q.steps[1:])


def proof_to_json(p):
    return {"steps": [{"term": str(t), "kind": k.value} for t, k in p.steps]}


def proof_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return make_proof([(s["term"], s.get("kind", "beta")) for s in data["steps"]])


def load_proof(path):
    with open(path) as fh:
        return proof_from_json(json.load(fh))
