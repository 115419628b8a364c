"""Verdict and report containers shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a mechanical check.

    ok is True/False for decided properties and None when the property does
    not apply (e.g. multiplicativity of a stochastic decoder). The witness
    is the first counterexample in canonical order, when one exists.
    """

    ok: bool | None
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok is True

    @property
    def applicable(self) -> bool:
        return self.ok is not None

    @staticmethod
    def passed(note: str = "") -> "Verdict":
        return Verdict(True, None, note)

    @staticmethod
    def failed(witness: Any, note: str = "") -> "Verdict":
        return Verdict(False, witness, note)

    @staticmethod
    def not_applicable(note: str = "") -> "Verdict":
        return Verdict(None, None, note)

    def describe(self) -> str:
        if self.ok is None:
            return "not applicable" + (f" ({self.note})" if self.note else "")
        if self.ok:
            return "true"
        parts = ["false"]
        if self.witness is not None:
            parts.append(f"witness {_show(self.witness)}")
        if self.note:
            parts.append(self.note)
        return ", ".join(parts)


def _show(value: Any) -> str:
    if hasattr(value, "render"):
        return value.render()
    if isinstance(value, tuple):
        return "(" + ", ".join(_show(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class ClassificationReport:
    """Structural verdicts for a tokenizer pair."""

    deterministic_encoder: Verdict
    deterministic_decoder: Verdict
    bijective: Verdict
    multiplicative_decoder: Verdict
    trivial_kernel: Verdict
    prefix_monotone: Verdict

    def lines(self) -> list[str]:
        return [
            f"deterministic encoder: {self.deterministic_encoder.describe()}",
            f"deterministic decoder: {self.deterministic_decoder.describe()}",
            f"bijective: {self.bijective.describe()}",
            f"multiplicative decoder: {self.multiplicative_decoder.describe()}",
            f"trivial kernel: {self.trivial_kernel.describe()}",
            f"prefix monotone: {self.prefix_monotone.describe()}",
        ]


@dataclass(frozen=True)
class ProbeReport:
    """Result of probing the exactness/consistency equivalence.

    For an exact tokenizer the probe checks consistency against random
    distributions plus every point mass; for an inexact one it exhibits a
    point-mass distribution the tokenizer is inconsistent with.
    """

    exact: bool
    trials: int
    ok: bool
    counterexample: Any = None
    detail: str = ""

    def describe(self) -> str:
        if self.exact:
            return f"exact; consistent on {self.trials} random distributions and all point masses"
        if self.counterexample is not None:
            return f"not exact; inconsistent with point mass on {_show(self.counterexample)}"
        return "not exact; no counterexample produced"
