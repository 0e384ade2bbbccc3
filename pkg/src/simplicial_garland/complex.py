"""Finite simplicial complexes over integer vertices.

Faces are plain tuples of strictly increasing non-negative ints; ``()`` is
the (-1)-dimensional empty face.  The natural integer order on vertices is
the single orientation convention used everywhere in the package.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

Face = tuple[int, ...]

EMPTY_FACE: Face = ()


class ComplexError(ValueError):
    """Malformed face or a query that does not fit the complex."""


def make_face(vertices: Iterable[int]) -> Face:
    """Validate ``vertices`` and return them as a canonical face."""
    face = tuple(vertices)
    for v in face:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ComplexError(f"vertex ids must be non-negative ints, got {v!r}")
    if any(a >= b for a, b in zip(face, face[1:])):
        raise ComplexError(f"face vertices must be strictly increasing, got {face}")
    return face


def dim_of(face: Sequence[int]) -> int:
    return len(face) - 1


def incidence_sign(tau: Face, sigma: Face) -> int:
    """Return the incidence sign ``(tau : sigma)`` for a codimension-one pair.

    The sign is ``(-1) ** #{v in tau : v < u}`` where ``u`` is the vertex
    removed from ``tau`` to obtain ``sigma``.
    """
    if len(tau) != len(sigma) + 1:
        raise ComplexError(f"{sigma} is not a codimension-one face of {tau}")
    extra = set(tau).difference(sigma)
    if len(extra) != 1 or not set(sigma) <= set(tau):
        raise ComplexError(f"{sigma} is not a face of {tau}")
    (u,) = extra
    smaller = sum(1 for v in tau if v < u)
    return -1 if smaller % 2 else 1


class SimplicialComplex:
    """Immutable downward-closed family of faces.

    Faces of each dimension are kept in lexicographic order; every matrix
    built from a complex is indexed by that order.
    """

    __slots__ = ("_faces", "_index", "_maximal", "_cof")

    def __init__(self, faces: Iterable[Face]):
        # Caller guarantees downward closure; use build_complex otherwise.
        by_dim: dict[int, list[Face]] = {}
        for f in set(faces):
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._faces: dict[int, tuple[Face, ...]] = {
            k: tuple(sorted(v)) for k, v in sorted(by_dim.items())
        }
        self._index: dict[Face, int] = {}
        for flist in self._faces.values():
            for i, f in enumerate(flist):
                self._index[f] = i
        self._maximal: tuple[Face, ...] | None = None
        self._cof: dict[int, dict[Face, list[Face]]] = {}

    # -- basic queries -------------------------------------------------
    @property
    def dim(self) -> int | None:
        """Largest face dimension; ``None`` for the empty complex."""
        if not self._faces:
            return None
        return max(self._faces)

    @property
    def is_empty(self) -> bool:
        return not self._faces

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(f[0] for f in self._faces.get(0, ()))

    def faces(self, k: int) -> tuple[Face, ...]:
        """Faces of dimension ``k`` in lexicographic order."""
        if k < -1:
            raise ComplexError(f"dimension must be >= -1, got {k}")
        return self._faces.get(k, ())

    def index(self, face: Face) -> int:
        """Position of ``face`` within its dimension."""
        try:
            return self._index[face]
        except KeyError:
            raise ComplexError(f"{face} is not a face of the complex") from None

    def n_faces(self, k: int) -> int:
        return len(self._faces.get(k, ()))

    def f_vector(self) -> dict[int, int]:
        return {k: len(v) for k, v in self._faces.items()}

    def __contains__(self, face: object) -> bool:
        return face in self._index

    def __iter__(self) -> Iterator[Face]:
        for flist in self._faces.values():
            yield from flist

    def __len__(self) -> int:
        return len(self._index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self) -> int:
        return hash(tuple(self._faces.items()))

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f_vector={self.f_vector()})"

    def maximal_faces(self) -> tuple[Face, ...]:
        """Faces not strictly contained in another face, sorted by (dim, lex)."""
        if self._maximal is None:
            covered: set[Face] = set()
            for k, flist in self._faces.items():
                if k < 0:
                    continue
                for f in flist:
                    for i in range(len(f)):
                        covered.add(f[:i] + f[i + 1:])
            self._maximal = tuple(f for f in self if f not in covered)
        return self._maximal

    def _require(self, face: Face) -> None:
        if face not in self._index:
            raise ComplexError(f"{face} is not a face of the complex")

    # -- domain operations ----------------------------------------------
    def is_pure(self, d: int) -> bool:
        if self.is_empty:
            raise ComplexError("purity is undefined for the empty complex")
        return all(len(f) - 1 == d for f in self.maximal_faces())

    def neighbors(self, sigma: Face) -> frozenset[int]:
        """Vertices ``v`` outside ``sigma`` with ``sigma + {v}`` a face."""
        self._require(sigma)
        out = set()
        for tau in self.cofacets(sigma):
            out.update(set(tau).difference(sigma))
        return frozenset(out)

    def cofacets(self, sigma: Face) -> list[Face]:
        """Faces of dimension ``dim(sigma) + 1`` containing ``sigma``."""
        k = len(sigma) - 1
        if k not in self._cof:
            table: dict[Face, list[Face]] = {f: [] for f in self.faces(k)}
            for tau in self.faces(k + 1):
                for i in range(len(tau)):
                    table[tau[:i] + tau[i + 1:]].append(tau)
            self._cof[k] = table
        return list(self._cof[k].get(sigma, ()))

    def cofaces_of_dim(self, eta: Face, k: int) -> list[Face]:
        """``k``-faces containing ``eta`` (lex order)."""
        e = set(eta)
        return [sigma for sigma in self.faces(k) if e.issubset(sigma)]

    def link(self, sigma: Face) -> SimplicialComplex:
        """The link of ``sigma``, kept on the original vertex ids."""
        self._require(sigma)
        if not sigma:
            return self
        s = set(sigma)
        out = []
        for tau in self:
            if s.issubset(tau):
                out.append(tuple(v for v in tau if v not in s))
        return SimplicialComplex(out)

    def skeleton(self, k: int) -> SimplicialComplex:
        return SimplicialComplex(f for f in self if len(f) - 1 <= k)


def _closure(generators: Iterable[Face]) -> set[Face]:
    out: set[Face] = set()
    for g in generators:
        if g in out:
            continue
        for r in range(len(g) + 1):
            out.update(combinations(g, r))
    return out


def build_complex(generators: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of ``generators`` (each a strictly increasing face).

    An empty generator list yields the empty complex (no faces at all).
    """
    gens = [make_face(g) for g in generators]
    return SimplicialComplex(_closure(gens))


def faces_of_dim(X: SimplicialComplex, k: int) -> list[Face]:
    return list(X.faces(k))


def is_pure(X: SimplicialComplex, d: int) -> bool:
    return X.is_pure(d)


def link(X: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    return X.link(make_face(sigma))


def neighbors(X: SimplicialComplex, sigma: Sequence[int]) -> frozenset[int]:
    return X.neighbors(make_face(sigma))


def full_simplex(n: int) -> SimplicialComplex:
    """All subsets of ``{0, ..., n-1}``."""
    return build_complex([tuple(range(n))])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the (n-1)-simplex: all proper subsets of ``{0..n-1}``."""
    if n < 1:
        raise ComplexError("boundary needs at least one vertex")
    return build_complex(combinations(range(n), n - 1))


def skeleton_of_simplex(n: int, d: int) -> SimplicialComplex:
    """The ``d``-skeleton of the full simplex on ``n`` vertices."""
    if d < 0 or d > n - 1:
        raise ComplexError(f"need 0 <= d <= n-1, got n={n}, d={d}")
    return build_complex(combinations(range(n), d + 1))
