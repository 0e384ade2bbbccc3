"""Plain-text complex and weight files.

Complex file: one face per line as whitespace-separated vertex ids, ``#``
starts a comment.  The complex is the downward closure of the listed faces.

Weight file: lines ``v1 v2 ... : p/q`` (the empty face is ``: p/q``);
faces not listed get weight 1.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .complex import Face, SimplicialComplex, build_complex
from .laplacian import WeightFunction

MAX_VERTEX = 2 ** 32


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_vertices(tokens: list[str], lineno: int) -> Face:
    verts = []
    for tok in tokens:
        if not tok.isdigit():
            raise ParseError(f"not a non-negative integer: {tok!r}", lineno)
        v = int(tok)
        if v >= MAX_VERTEX:
            raise ParseError(f"vertex id {v} out of range", lineno)
        verts.append(v)
    if len(set(verts)) != len(verts):
        raise ParseError("duplicate vertex", lineno)
    return tuple(sorted(verts))


def parse_generators(text: str) -> list[Face]:
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line:
            gens.append(_parse_vertices(line.split(), lineno))
    if not gens:
        raise ParseError("no faces listed", 0)
    return gens


def parse_complex(text: str) -> SimplicialComplex:
    return build_complex(parse_generators(text))


def serialize_complex(X: SimplicialComplex) -> str:
    lines = [" ".join(map(str, f)) for f in X.maximal_faces() if f]
    return "".join(line + "\n" for line in lines)


def read_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def parse_weights(text: str, X: SimplicialComplex) -> WeightFunction:
    values: dict[Face, Fraction] = {f: Fraction(1) for f in X}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.count(":") != 1:
            raise ParseError("expected 'v1 v2 ... : weight'", lineno)
        left, right = line.split(":")
        face = _parse_vertices(left.split(), lineno)
        if face not in X:
            raise ParseError(f"{face} is not a face of the complex", lineno)
        try:
            w = Fraction(right.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {right.strip()!r}", lineno) from None
        if w <= 0:
            raise ParseError("weights must be positive", lineno)
        values[face] = w
    return WeightFunction(X, values)


def serialize_weights(w: WeightFunction) -> str:
    out = []
    for f in w.complex:
        out.append(f"{' '.join(map(str, f))}{' ' if f else ''}: {w[f]}\n")
    return "".join(out)


def read_weights(path: str | Path, X: SimplicialComplex) -> WeightFunction:
    return parse_weights(Path(path).read_text(encoding="utf-8"), X)
