"""Text formats for instances and solutions.

Instance file (whitespace separated, ``#`` lines are comments)::

    BBQP 1
    m n
    c_1 ... c_m
    d_1 ... d_n
    q_11 ... q_1n
    ...
    q_m1 ... q_mn

An optional ``# name: <label>`` comment before the header carries the
instance name.  Solution file: ``m n``, then x and y as 0/1 strings.
"""

from __future__ import annotations

import io
import os
import re
from typing import Iterable, TextIO, Union

import numpy as np

from .errors import FormatError, OverflowGuardError
from .model import Instance, Solution

MAGIC = "BBQP"
VERSION = "1"
_INT = re.compile(r"[+-]?\d+\Z")
_NAME = re.compile(r"#\s*name:\s*(.*)\Z")

PathOrStream = Union[str, os.PathLike, TextIO]


def _content_lines(lines: Iterable[str]):
    """Yield (lineno, [(col, token), ...]) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = [(mt.start() + 1, mt.group()) for mt in re.finditer(r"\S+", raw)]
        yield lineno, tokens


def _ints(lineno, tokens, expected, what):
    if len(tokens) != expected:
        raise FormatError(
            f"{what}: expected {expected} integers, found {len(tokens)}", line=lineno
        )
    values = []
    for col, tok in tokens:
        if not _INT.match(tok):
            raise FormatError(f"{what}: {tok!r} is not an integer", line=lineno, column=col)
        values.append(int(tok))
    return values


def _read_text(source: PathOrStream) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def parse_instance(source: PathOrStream) -> Instance:
    text = _read_text(source)
    lines = text.splitlines()
    name = None
    for raw in lines:
        stripped = raw.strip()
        if not stripped:
            continue
        match = _NAME.match(stripped)
        if match:
            name = match.group(1).strip() or None
            break
        if not stripped.startswith("#"):
            break

    content = _content_lines(lines)

    def next_line(what):
        try:
            return next(content)
        except StopIteration:
            raise FormatError(f"unexpected end of file while reading {what}", line=len(lines) + 1)

    lineno, tokens = next_line("header")
    if [t for _, t in tokens] != [MAGIC, VERSION]:
        raise FormatError(f"header must be '{MAGIC} {VERSION}'", line=lineno, column=1)

    lineno, tokens = next_line("dimensions")
    m, n = _ints(lineno, tokens, 2, "dimensions")
    if m < 1 or n < 1:
        raise FormatError(f"dimensions must be positive, got {m} {n}", line=lineno)

    lineno, tokens = next_line("c")
    c = _ints(lineno, tokens, m, "c")
    lineno, tokens = next_line("d")
    d = _ints(lineno, tokens, n, "d")
    rows = []
    for i in range(m):
        lineno, tokens = next_line(f"row {i + 1} of Q")
        rows.append(_ints(lineno, tokens, n, f"row {i + 1} of Q"))

    extra = next(content, None)
    if extra is not None:
        raise FormatError("trailing data after the last row of Q", line=extra[0])

    # bounds check on Python ints before any int64 conversion can wrap
    limit = 2**62
    qmax = max((abs(v) for row in rows for v in row), default=0)
    bound = m * n * qmax + m * max(map(abs, c)) + n * max(map(abs, d))
    if bound > limit:
        raise OverflowGuardError("coefficients too large: objective magnitude bound exceeds 2^62")
    return Instance(np.array(rows, dtype=np.int64), np.array(c, dtype=np.int64),
                    np.array(d, dtype=np.int64), name=name)


def serialize_instance(inst: Instance) -> str:
    out = io.StringIO()
    if inst.name:
        out.write(f"# name: {inst.name}\n")
    out.write(f"{MAGIC} {VERSION}\n")
    out.write(f"{inst.m} {inst.n}\n")
    out.write(" ".join(map(str, inst.c.tolist())) + "\n")
    out.write(" ".join(map(str, inst.d.tolist())) + "\n")
    for row in inst.Q.tolist():
        out.write(" ".join(map(str, row)) + "\n")
    return out.getvalue()


def _bitstring(lineno, tokens, expected, what):
    if len(tokens) != 1:
        raise FormatError(f"{what}: expected a single 0/1 string", line=lineno)
    col, tok = tokens[0]
    if len(tok) != expected:
        raise FormatError(f"{what}: expected {expected} bits, found {len(tok)}", line=lineno, column=col)
    bad = re.search(r"[^01]", tok)
    if bad:
        raise FormatError(f"{what}: invalid bit {bad.group()!r}", line=lineno, column=col + bad.start())
    return np.frombuffer(tok.encode(), dtype=np.uint8) - ord("0")


def parse_solution(source: PathOrStream) -> Solution:
    text = _read_text(source)
    lines = text.splitlines()
    content = _content_lines(lines)
    try:
        lineno, tokens = next(content)
        m, n = _ints(lineno, tokens, 2, "dimensions")
        lineno, tokens = next(content)
        x = _bitstring(lineno, tokens, m, "x")
        lineno, tokens = next(content)
        y = _bitstring(lineno, tokens, n, "y")
    except StopIteration:
        raise FormatError("unexpected end of solution file", line=len(lines) + 1)
    return Solution(x, y)


def serialize_solution(sol: Solution) -> str:
    x = "".join(map(str, sol.x.tolist()))
    y = "".join(map(str, sol.y.tolist()))
    return f"{sol.x.size} {sol.y.size}\n{x}\n{y}\n"


def parse_bqp(source: PathOrStream):
    """Read a BQP problem ``max x^T Q' x + c' x``.

    Format: ``BQP 1``, then ``n``, then the n entries of c', then n rows
    of Q'.  Returns ``(Qp, cp)`` as int64 arrays.
    """
    lines = _read_text(source).splitlines()
    content = _content_lines(lines)

    def next_line(what):
        try:
            return next(content)
        except StopIteration:
            raise FormatError(f"unexpected end of file while reading {what}", line=len(lines) + 1)

    lineno, tokens = next_line("header")
    if [t for _, t in tokens] != ["BQP", VERSION]:
        raise FormatError(f"header must be 'BQP {VERSION}'", line=lineno, column=1)
    lineno, tokens = next_line("dimension")
    (n,) = _ints(lineno, tokens, 1, "dimension")
    if n < 1:
        raise FormatError(f"dimension must be positive, got {n}", line=lineno)
    lineno, tokens = next_line("c'")
    cp = _ints(lineno, tokens, n, "c'")
    rows = []
    for i in range(n):
        lineno, tokens = next_line(f"row {i + 1} of Q'")
        rows.append(_ints(lineno, tokens, n, f"row {i + 1} of Q'"))
    extra = next(content, None)
    if extra is not None:
        raise FormatError("trailing data after the last row of Q'", line=extra[0])
    return np.array(rows, dtype=np.int64), np.array(cp, dtype=np.int64)


def serialize_bqp(Qp, cp) -> str:
    Qp = np.asarray(Qp, dtype=np.int64)
    cp = np.asarray(cp, dtype=np.int64)
    lines = ["BQP 1", str(cp.size), " ".join(map(str, cp.tolist()))]
    lines += [" ".join(map(str, row)) for row in Qp.tolist()]
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    inst = parse_instance(path)
    if inst.name is None and not hasattr(path, "read"):
        label = os.path.splitext(os.path.basename(os.fspath(path)))[0]
        inst = Instance(inst.Q, inst.c, inst.d, name=label)
    return inst


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


__all__ = [
    "parse_instance",
    "serialize_instance",
    "parse_solution",
    "serialize_solution",
    "parse_bqp",
    "serialize_bqp",
    "read_instance",
    "write_text",
]
