"""Readers for the plain-text cusp-basis and curve-model files.

Cusp basis::

    level <N> weight 2 dim <d> bound <B>
    form 1
    1 <c_1>
    ...
    B <c_B>
    form 2
    ...

Curves, one per line::

    label <text> level <N> a <a1> <a2> <a3> <a4> <a6>

Blank lines and lines starting with ``#`` are ignored in both formats.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path
from typing import Optional

from .arithmetic import CurveModel, SingularCurve
from .congruence import CuspBasis
from .qseries import QSeries


class InputError(ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, path, line: int, msg: str):
        self.path, self.line = str(path), line
        super().__init__(f"{path}:{line}: {msg}" if line else f"{path}: {msg}")


class MalformedLine(InputError):
    pass


class NonIntegerCoefficient(InputError):
    pass


class InsufficientBound(InputError):
    pass


def _content_lines(path):
    with open(path) as fh:
        for no, raw in enumerate(fh, 1):
            s = raw.strip()
            if s and not s.startswith("#"):
                yield no, s.split()


def _int(tok: str, path, no: int, what: str, err=MalformedLine) -> int:
    try:
        return int(tok)
    except ValueError:
        raise err(path, no, f"{what} must be an integer, got {tok!r}") from None


def parse_cusp_basis(path, min_bound: Optional[int] = None) -> CuspBasis:
    """Read a cusp basis; ``min_bound`` is the verification window it must cover."""
    it = _content_lines(path)
    try:
        no, head = next(it)
    except StopIteration:
        raise MalformedLine(path, 0, "empty basis file") from None
    if len(head) != 8 or head[0::2] != ["level", "weight", "dim", "bound"]:
        raise MalformedLine(path, no, "expected 'level <N> weight 2 dim <d> bound <B>'")
    level, weight, dim, bound = (_int(t, path, no, k) for t, k in zip(head[1::2], head[0::2]))
    if weight != 2:
        raise MalformedLine(path, no, f"only weight 2 is supported, got {weight}")
    if min_bound is not None and bound < min_bound:
        raise InsufficientBound(path, no, f"bound {bound} is below the verification window {min_bound}")
    forms = []
    cur = None
    expect = 1
    last_no = no
    for no, toks in it:
        last_no = no
        if toks[0] == "form":
            if len(toks) != 2:
                raise MalformedLine(path, no, "expected 'form <index>'")
            if cur is not None and len(cur) != bound:
                raise MalformedLine(path, no, f"form {len(forms) + 1} has {len(cur)} coefficients, expected {bound}")
            if cur is not None:
                forms.append(cur)
            idx = _int(toks[1], path, no, "form index")
            if idx != len(forms) + 1:
                raise MalformedLine(path, no, f"form index {idx} out of sequence")
            cur, expect = [], 1
            continue
        if cur is None:
            raise MalformedLine(path, no, "coefficient line before any 'form' header")
        if len(toks) != 2:
            raise MalformedLine(path, no, "expected '<n> <c_n>'")
        n = _int(toks[0], path, no, "exponent")
        if n != expect:
            raise MalformedLine(path, no, f"exponent {n} out of order, expected {expect}")
        if n > bound:
            raise MalformedLine(path, no, f"exponent {n} beyond the declared bound {bound}")
        cur.append(_int(toks[1], path, no, f"coefficient of q^{n}", NonIntegerCoefficient))
        expect += 1
    if cur is not None:
        if len(cur) != bound:
            raise MalformedLine(path, last_no, f"form {len(forms) + 1} has {len(cur)} coefficients, expected {bound}")
        forms.append(cur)
    if len(forms) != dim:
        raise MalformedLine(path, last_no, f"header declares dim {dim} but {len(forms)} forms were read")
    series = tuple(QSeries._make(0, [0] + c) for c in forms)
    return CuspBasis(level, series, bound)


def parse_curves(path) -> list[CurveModel]:
    out = []
    for no, toks in _content_lines(path):
        if len(toks) != 10 or toks[0] != "label" or toks[2] != "level" or toks[4] != "a":
            raise MalformedLine(path, no, "expected 'label <text> level <N> a <a1> <a2> <a3> <a4> <a6>'")
        level = _int(toks[3], path, no, "level")
        a = [_int(t, path, no, "Weierstrass coefficient") for t in toks[5:]]
        try:
            out.append(CurveModel(toks[1], *a, level=level))
        except SingularCurve as exc:
            raise InputError(path, no, str(exc)) from None
    return out


def data_path(*parts) -> Path:
    return Path(str(resources.files("qtrace") / "data" / os.path.join(*parts)))


def default_basis_dir() -> Path:
    return data_path("bases")


def default_curves() -> Path:
    return data_path("curves.txt")


def load_basis(N: int, basis_dir=None, min_bound: Optional[int] = None) -> CuspBasis:
    d = Path(basis_dir) if basis_dir else default_basis_dir()
    return parse_cusp_basis(d / f"level_{N}.txt", min_bound=min_bound)
