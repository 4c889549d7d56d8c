"""Line-oriented text formats for stabilizer specs and codes.

Spec::

    d 3
    n 7
    m 7
    g 1 0 0 0 0 0 0 | 0 1 0 0 0 0 1     (X exponents | Z exponents)
    ...
    phases 0 0 0 0 0 0 0                  (optional)

A code file is a spec block followed by ``delta <int>`` and one
``c l_0 ... l_{m-1}`` line per codeword, the first all zeros. ``#`` starts a
comment. The writers emit the canonical form, which the readers reproduce
byte for byte.
"""

from __future__ import annotations

from pathlib import Path

from .cws import CWSCode
from .errors import SpecParseError
from .stabilizer import StabilizerSpec


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise SpecParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def _parse(text: str) -> tuple[StabilizerSpec, int | None, list[list[int]]]:
    header: dict[str, int] = {}
    rows: list[tuple[list[int], list[int]]] = []
    phases: list[int] | None = None
    delta: int | None = None
    words: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key in ("d", "n", "m"):
            if key in header or len(rest) != 1:
                raise SpecParseError(f"line {lineno}: bad or repeated header {line!r}")
            header[key] = _ints(rest, lineno)[0]
        elif key == "g":
            if "|" not in rest:
                raise SpecParseError(f"line {lineno}: generator row needs 'x ... | z ...'")
            bar = rest.index("|")
            rows.append((_ints(rest[:bar], lineno), _ints(rest[bar + 1 :], lineno)))
        elif key == "phases":
            if phases is not None:
                raise SpecParseError(f"line {lineno}: repeated phases line")
            phases = _ints(rest, lineno)
        elif key == "delta":
            if delta is not None or len(rest) != 1:
                raise SpecParseError(f"line {lineno}: bad or repeated delta")
            delta = _ints(rest, lineno)[0]
        elif key == "c":
            words.append(_ints(rest, lineno))
        else:
            raise SpecParseError(f"line {lineno}: unknown record {key!r}")
    missing = [k for k in ("d", "n", "m") if k not in header]
    if missing:
        raise SpecParseError(f"missing header(s): {', '.join(missing)}")
    d, n, m = header["d"], header["n"], header["m"]
    if d < 2 or n < 1 or m < 1:
        raise SpecParseError(f"need d >= 2, n >= 1, m >= 1 (got d={d}, n={n}, m={m})")
    if len(rows) != m:
        raise SpecParseError(f"expected {m} generator rows, found {len(rows)}")
    for k, (x, z) in enumerate(rows):
        if len(x) != n or len(z) != n:
            raise SpecParseError(f"generator {k}: expected {n} X and {n} Z exponents")
    if phases is not None and len(phases) != m:
        raise SpecParseError(f"phases line has {len(phases)} entries, expected {m}")
    spec = StabilizerSpec(d, n, [x for x, _ in rows], [z for _, z in rows], tuple(phases or ()))
    return spec, delta, words


def read_spec(text: str) -> StabilizerSpec:
    spec, delta, words = _parse(text)
    if delta is not None or words:
        raise SpecParseError("spec file contains code records; read it with read_code")
    return spec


def read_code(text: str) -> CWSCode:
    spec, delta, words = _parse(text)
    if delta is None:
        raise SpecParseError("code file lacks a 'delta' line")
    if not words:
        raise SpecParseError("code file has no codewords")
    if any(len(w) != spec.m for w in words):
        raise SpecParseError(f"codewords must have {spec.m} entries")
    try:
        return CWSCode(spec, [tuple(w) for w in words], delta)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


def write_spec(spec: StabilizerSpec) -> str:
    lines = [f"d {spec.d}", f"n {spec.n}", f"m {spec.m}"]
    for x, z in zip(spec.x_mat, spec.z_mat):
        lines.append("g " + " ".join(map(str, x)) + " | " + " ".join(map(str, z)))
    if any(spec.phases):
        lines.append("phases " + " ".join(map(str, spec.phases)))
    return "\n".join(lines) + "\n"


def write_code(code: CWSCode) -> str:
    lines = [write_spec(code.spec).rstrip("\n"), f"delta {code.delta}"]
    lines += ["c " + " ".join(map(str, c)) for c in code.codewords]
    return "\n".join(lines) + "\n"


def load_spec(path: str | Path) -> StabilizerSpec:
    return read_spec(Path(path).read_text())


def load_code(path: str | Path) -> CWSCode:
    return read_code(Path(path).read_text())


def data_path(name: str) -> Path:
    """Path of a fixture shipped in the package data directory."""
    return Path(__file__).with_name("data") / name
