"""Randomized strictness trials over the matrix category."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..catcore import MatCat
from .complexes import is_chain_isomorphism, tensor_comparison
from .core import check_axioms
from .monoidal import tensor, unit_pyramid
from .sampling import random_pyramid

CHECKS = ("associativity", "left_unit", "right_unit", "axioms", "total_tensor_oracle")


@dataclass
class StrictnessReport:
    trials: int = 0
    passed: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    failures: list = field(default_factory=list)  # (trial, check, detail)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "passed": dict(self.passed),
            "failures": [{"trial": t, "check": c, "detail": d} for t, c, d in self.failures],
            "ok": self.ok,
        }


def strictness_trial(cat: MatCat, rng, max_width: int = 2) -> dict[str, str | None]:
    """One random triple; maps each check name to None (pass) or a failure detail."""
    X, Y, Z = (random_pyramid(cat, rng, max_width) for _ in range(3))
    out: dict[str, str | None] = {}
    lhs, rhs = tensor(tensor(X, Y), Z), tensor(X, tensor(Y, Z))
    out["associativity"] = None if lhs == rhs else f"widths {lhs.width}/{rhs.width}, cells differ or maps differ"
    U = unit_pyramid(cat)
    out["left_unit"] = None if tensor(U, X) == X else "I.X != X"
    out["right_unit"] = None if tensor(X, U) == X else "X.I != X"
    XY = tensor(X, Y)
    bad = check_axioms(XY)
    out["axioms"] = None if not bad else f"axiom {bad[0].axiom} at {bad[0].at}: {bad[0].detail}"
    f, g = tensor_comparison(X, Y, XY)
    out["total_tensor_oracle"] = None if is_chain_isomorphism(f, g) else "comparison map is not a chain isomorphism"
    return out


def run_strictness(cat: MatCat, rng, trials: int, max_width: int = 2) -> StrictnessReport:
    rep = StrictnessReport(trials=trials)
    for t in range(trials):
        for name, problem in strictness_trial(cat, rng, max_width).items():
            if problem is None:
                rep.passed[name] += 1
            else:
                rep.failures.append((t, name, problem))
    return rep
