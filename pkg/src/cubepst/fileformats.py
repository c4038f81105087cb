"""Text formats for connection sets and the JSON analysis report.

Matrix format::

    # optional comments
    5 11
    0 0 0 0 0 0 0 1 1 1 1
    ...

one line per row of M. Set format: one element per line as a bit string,
leftmost character = coordinate 1 = least significant bit of the vertex index.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, TextIO

from .gf2core import (
    MAX_CODE_DIM,
    ConnectionSet,
    bits_to_int,
    int_to_bits,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _data_lines(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if text and not text.startswith("#"):
            yield lineno, text


def parse_matrix(lines: Iterable[str], keep_order: bool = False) -> ConnectionSet:
    it = _data_lines(lines)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise ParseError("empty input") from None
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError("header must be 'd m'", lineno)
    d, m = int(parts[0]), int(parts[1])
    if not 1 <= d <= MAX_CODE_DIM:
        raise ParseError(f"d must lie in [1, {MAX_CODE_DIM}]", lineno)
    if not 1 <= m < (1 << d):
        raise ParseError(f"m must lie in [1, {(1 << d) - 1}] for d = {d}", lineno)
    cols = [0] * m
    for i in range(d):
        try:
            lineno, text = next(it)
        except StopIteration:
            raise ParseError(f"expected {d} rows, got {i}") from None
        entries = text.split()
        if len(entries) != m or any(e not in ("0", "1") for e in entries):
            raise ParseError(f"row {i + 1} must have {m} entries 0/1", lineno)
        for j, e in enumerate(entries):
            if e == "1":
                cols[j] |= 1 << i
    extra = next(it, None)
    if extra is not None:
        raise ParseError("unexpected data after the matrix", extra[0])
    seen: dict[int, int] = {}
    for j, c in enumerate(cols, start=1):
        if c == 0:
            raise ParseError(f"column {j} is zero")
        if c in seen:
            raise ParseError(f"projectivity error: columns {seen[c]} and {j} are equal")
        seen[c] = j
    return ConnectionSet.from_elements(d, cols, keep_order)


def parse_set(lines: Iterable[str], keep_order: bool = False) -> ConnectionSet:
    dim = None
    elements: list[int] = []
    seen: dict[int, int] = {}
    for lineno, text in _data_lines(lines):
        if dim is None:
            dim = len(text)
            if not 1 <= dim <= MAX_CODE_DIM:
                raise ParseError(f"d must lie in [1, {MAX_CODE_DIM}]", lineno)
        if len(text) != dim:
            raise ParseError(f"expected a {dim}-character bit string", lineno)
        try:
            v = bits_to_int(text)
        except ValueError:
            raise ParseError(f"not a bit string: {text!r}", lineno) from None
        if v == 0:
            raise ParseError("zero element is not allowed", lineno)
        if v in seen:
            raise ParseError(f"projectivity error: repeats line {seen[v]}", lineno)
        seen[v] = lineno
        elements.append(v)
    if dim is None:
        raise ParseError("empty input")
    return ConnectionSet.from_elements(dim, elements, keep_order)


def parse(stream: TextIO | Iterable[str], fmt: str = "matrix", keep_order: bool = False) -> ConnectionSet:
    if fmt == "matrix":
        return parse_matrix(stream, keep_order)
    if fmt == "set":
        return parse_set(stream, keep_order)
    raise ValueError(f"unknown format {fmt!r}")


def format_matrix(C: ConnectionSet) -> str:
    rows = [" ".join(str((c >> i) & 1) for c in C.elements) for i in range(C.dim)]
    return "\n".join([f"{C.dim} {C.m}", *rows]) + "\n"


def format_set(C: ConnectionSet) -> str:
    return "".join(int_to_bits(c, C.dim) + "\n" for c in C.elements)


def format_connection_set(C: ConnectionSet, fmt: str = "matrix") -> str:
    if fmt == "matrix":
        return format_matrix(C)
    if fmt == "set":
        return format_set(C)
    raise ValueError(f"unknown format {fmt!r}")


# --------------------------------------------------------------------------
# JSON with fixed 17-significant-digit floats


def _encode(obj) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite float in report")
        text = format(obj, ".17g")
        if not any(ch in text for ch in ".en"):
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats printed with 17 significant digits."""
    return _encode(obj)


def vector_entry(x: int | None, dim: int):
    if x is None:
        return None
    return {"bits": int_to_bits(x, dim), "int": int(x)}


def complex_entry(z: complex | None):
    if z is None:
        return None
    return {"re": float(z.real), "im": float(z.imag)}
