"""Conversion proofs read as paths in the model.

A proof with n conversion steps becomes r1 ∗ ... ∗ rn, where each ri sits
at the common value a of the chain and dips to ⊥ at the midpoint of its
segment.  Two readings of proof equality are reported side by side:
equal period counts, and homotopy of the paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EquationMismatch, InterpretationMismatch
from .lam import alpha_eq
from .model import Environment, interpret
from .steppath import StepPath1, check_continuity, concat_many, constant_path, homotopic

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SteppedInterpretation:
    proof: object = field(repr=False)
    value: object  # TowerElement shared by the chain terms
    periods: int
    path: StepPath1

    @property
    def dips(self):
        """Parameters where the path visits ⊥."""
        n = self.periods
        return [Fraction(2 * i - 1, 2 * n) for i in range(1, n + 1)]


def dip_segment(space, a, bottom):
    """ri: a on [0,1/2) ∪ (1/2,1], ⊥ at 1/2."""
    return StepPath1(space, (Fraction(0), HALF, Fraction(1)), (a, a, bottom, a, a))


def interpret_proof(proof, env=None, tower=None, level=0):
    """Interpret every chain term; they must agree on components 0..level.

    Raises InterpretationMismatch at the first term that disagrees with the
    first one.
    """
    if env is None:
        env = Environment(tower)
    tower = tower or env.tower
    memo = {}
    values = [interpret(t, env, tower, memo) for t in proof.terms]
    ref = values[0].components[: level + 1]
    for i, v in enumerate(values):
        if v.components[: level + 1] != ref:
            raise InterpretationMismatch(i, proof.terms[i])
    a = values[0]
    space = tower.space
    if proof.length == 0:
        path = constant_path(space, a.label)
    else:
        seg = dip_segment(space, a.label, tower.bottom().label)
        path = concat_many([seg] * proof.length)
    return SteppedInterpretation(proof, a, proof.length, path)


def proofs_equal_model(P, Q, env=None, tower=None, level=0):
    """Length reading t(p) = t(q) next to the homotopy reading p =_h q."""
    if not (alpha_eq(P.first, Q.first) and alpha_eq(P.last, Q.last)):
        raise EquationMismatch(f"{P.first} = {P.last} and {Q.first} = {Q.last} are different equations")
    ip = interpret_proof(P, env, tower, level)
    iq = interpret_proof(Q, env, tower, level)
    space = ip.path.space
    return {
        "equation": f"{P.first} = {P.last}",
        "periods": [ip.periods, iq.periods],
        "length_equal": ip.periods == iq.periods,
        "homotopic": homotopic(ip.path, iq.path, space),
        "continuous": bool(check_continuity(ip.path)) and bool(check_continuity(iq.path)),
    }
