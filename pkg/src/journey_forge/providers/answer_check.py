"""Final-answer extraction and comparison.

The checker prefers the last boxed-answer marker in the response; without
one it falls back to the last number or fraction on the final non-empty
line. Comparison happens after normalization: surrounding and internal
whitespace is collapsed away, a leading "+" is stripped, and simple integer
fractions are reduced to lowest terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

BOXED_MARKER = "\\boxed{"

_NUMBER_OR_FRACTION = re.compile(r"-?\d+\s*/\s*-?\d+|-?\d+(?:\.\d+)?")
_SIMPLE_FRACTION = re.compile(r"^(-?\d+)/(-?\d+)$")


@dataclass
class CheckReport:
    """Side channel for extraction flags; the boolean verdict stays a boolean."""

    flags: list[str] = field(default_factory=list)

    def flag(self, name: str) -> None:
        self.flags.append(name)


def extract_boxed(text: str) -> Optional[str]:
    """Content of the last boxed-answer marker, brace-balanced."""
    start = text.rfind(BOXED_MARKER)
    if start < 0:
        return None
    i = start + len(BOXED_MARKER)
    depth = 1
    out: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return "".join(out)
        out.append(ch)
        i += 1
    return None  # unbalanced marker


def extract_final_answer(response: str, report: Optional[CheckReport] = None) -> Optional[str]:
    boxed = extract_boxed(response)
    if boxed is not None:
        return boxed
    lines = [line for line in response.splitlines() if line.strip()]
    if not lines:
        if report is not None:
            report.flag("unextractable")
        return None
    last = lines[-1]
    matches = _NUMBER_OR_FRACTION.findall(last)
    if matches:
        return matches[-1]
    if "=" in last:
        candidate = last.rsplit("=", 1)[1].strip()
        if candidate:
            return candidate
    if report is not None:
        report.flag("unextractable")
    return None


def normalize_answer(answer: str) -> str:
    collapsed = "".join(answer.split())
    if collapsed.startswith("+"):
        collapsed = collapsed[1:]
    fraction = _SIMPLE_FRACTION.match(collapsed)
    if fraction:
        num, den = int(fraction.group(1)), int(fraction.group(2))
        if den != 0:
            sign = -1 if (num < 0) != (den < 0) else 1
            num, den = abs(num), abs(den)
            common = gcd(num, den) or 1
            num //= common
            den //= common
            value = sign * num
            return str(value) if den == 1 else f"{value}/{den}"
    return collapsed


def final_answer(response: str, gold: str, report: Optional[CheckReport] = None) -> bool:
    """Whether the response's final answer matches the gold answer."""
    extracted = extract_final_answer(response, report)
    if extracted is None:
        return False
    return normalize_answer(extracted) == normalize_answer(gold)
