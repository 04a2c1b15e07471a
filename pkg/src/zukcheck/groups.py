"""Concrete groups with decidable equality: Z^n, integer matrix groups, Z/m."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import InputError
from .exact import bareiss_det

FREE_ABELIAN = "free_abelian"
INTEGER_MATRIX = "integer_matrix"
CYCLIC = "cyclic"

_KIND_BYTE = {FREE_ABELIAN: 0, INTEGER_MATRIX: 1, CYCLIC: 2}

Payload = Union[int, tuple[int, ...], tuple[tuple[int, ...], ...]]


@dataclass(frozen=True)
class GroupDescriptor:
    """Which group an element lives in.

    ``size`` is the rank for ``free_abelian``, the matrix dimension for
    ``integer_matrix`` and the modulus for ``cyclic``. For matrices,
    ``det=1`` selects SL_n(Z) and ``det=-1`` selects GL_n(Z).
    """

    kind: str
    size: int
    det: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KIND_BYTE:
            raise InputError(f"unknown group kind {self.kind!r}")
        if isinstance(self.size, bool) or not isinstance(self.size, int):
            raise InputError(f"group size must be an integer, got {self.size!r}")
        if self.kind == CYCLIC and self.size < 2:
            raise InputError(f"cyclic modulus must be >= 2, got {self.size}")
        if self.size < 1:
            raise InputError(f"{self.kind} size must be >= 1, got {self.size}")
        if self.det is not None:
            if self.kind != INTEGER_MATRIX:
                raise InputError("a determinant constraint only applies to integer_matrix groups")
            if self.det not in (1, -1):
                raise InputError(f"determinant constraint must be +1 or -1, got {self.det}")

    @classmethod
    def free_abelian(cls, rank: int) -> GroupDescriptor:
        return cls(FREE_ABELIAN, rank)

    @classmethod
    def integer_matrix(cls, dim: int, det: Optional[int] = None) -> GroupDescriptor:
        return cls(INTEGER_MATRIX, dim, det)

    @classmethod
    def cyclic(cls, modulus: int) -> GroupDescriptor:
        return cls(CYCLIC, modulus)

    def element(self, raw) -> GroupElement:
        """Build an element from plain ints / nested lists."""
        if self.kind == CYCLIC:
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise InputError(f"cyclic element must be an integer, got {raw!r}")
            return GroupElement(self, raw % self.size)
        if self.kind == FREE_ABELIAN:
            if isinstance(raw, int) and not isinstance(raw, bool) and self.size == 1:
                raw = [raw]
            return GroupElement(self, tuple(_as_int(v) for v in _as_list(raw)))
        return GroupElement(self, tuple(tuple(_as_int(v) for v in _as_list(row)) for row in _as_list(raw)))

    def describe(self) -> str:
        if self.kind == FREE_ABELIAN:
            return f"Z^{self.size}" if self.size > 1 else "Z"
        if self.kind == CYCLIC:
            return f"Z/{self.size}"
        if self.det is None:
            return f"integer {self.size}x{self.size} matrices"
        return f"{'SL' if self.det == 1 else 'GL'}_{self.size}(Z)"


def _as_list(v) -> list:
    if isinstance(v, (list, tuple)):
        return list(v)
    raise InputError(f"expected an array, got {v!r}")


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"expected an integer, got {v!r}")
    return v


@dataclass(frozen=True)
class GroupElement:
    group: GroupDescriptor
    payload: Payload

    def __post_init__(self):
        g = self.group
        p = self.payload
        if g.kind == CYCLIC:
            if not isinstance(p, int) or not 0 <= p < g.size:
                raise InputError(f"residue {p!r} not reduced modulo {g.size}")
        elif g.kind == FREE_ABELIAN:
            if not isinstance(p, tuple) or len(p) != g.size:
                raise InputError(f"vector {p!r} does not have length {g.size}")
        else:
            if not isinstance(p, tuple) or len(p) != g.size or any(len(r) != g.size for r in p):
                raise InputError(f"matrix {_render_matrix(p)} is not {g.size}x{g.size}")
            if g.det is not None:
                d = bareiss_det(p)
                # det=1 means SL (det exactly 1); det=-1 means GL (det is +-1)
                allowed = (1,) if g.det == 1 else (1, -1)
                if d not in allowed:
                    raise InputError(
                        f"matrix {_render_matrix(p)} has determinant {d}, not in {set(allowed)}"
                    )

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __str__(self) -> str:
        return render(self)


def identity(group: GroupDescriptor) -> GroupElement:
    if group.kind == CYCLIC:
        return GroupElement(group, 0)
    if group.kind == FREE_ABELIAN:
        return GroupElement(group, (0,) * group.size)
    n = group.size
    return GroupElement(group, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise InputError(f"cannot multiply elements of {a.group.describe()} and {b.group.describe()}")
    g = a.group
    if g.kind == CYCLIC:
        return GroupElement(g, (a.payload + b.payload) % g.size)
    if g.kind == FREE_ABELIAN:
        return GroupElement(g, tuple(x + y for x, y in zip(a.payload, b.payload)))
    cols = list(zip(*b.payload))
    return GroupElement(g, tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a.payload))


def _minor(m: Sequence[Sequence[int]], i: int, j: int) -> list[list[int]]:
    return [list(row[:j]) + list(row[j + 1 :]) for k, row in enumerate(m) if k != i]


def inverse(a: GroupElement) -> GroupElement:
    g = a.group
    if g.kind == CYCLIC:
        return GroupElement(g, (-a.payload) % g.size)
    if g.kind == FREE_ABELIAN:
        return GroupElement(g, tuple(-x for x in a.payload))
    m = a.payload
    det = bareiss_det(m)
    if det not in (1, -1):
        raise InputError(f"matrix {_render_matrix(m)} has determinant {det}; no integer inverse")
    n = len(m)
    if n == 1:
        return GroupElement(g, ((det,),))
    # inverse = adjugate / det, and det = +-1
    inv = tuple(
        tuple((-1) ** (i + j) * bareiss_det(_minor(m, j, i)) * det for j in range(n)) for i in range(n)
    )
    return GroupElement(g, inv)


def _encode_int(v: int) -> bytes:
    mag = abs(v)
    body = mag.to_bytes((mag.bit_length() + 7) // 8, "little")
    return bytes([1 if v < 0 else 0]) + len(body).to_bytes(4, "little") + body


def canonical_key(a: GroupElement) -> bytes:
    """Injective byte encoding: kind byte, then sign-magnitude little-endian entries."""
    p = a.payload
    if a.group.kind == CYCLIC:
        entries: Iterable[int] = (p,)
    elif a.group.kind == FREE_ABELIAN:
        entries = p
    else:
        entries = (v for row in p for v in row)
    return bytes([_KIND_BYTE[a.group.kind]]) + b"".join(_encode_int(v) for v in entries)


def _render_matrix(m) -> str:
    return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in m) + "]"


def render(a: GroupElement) -> str:
    if a.group.kind == CYCLIC:
        return f"{a.payload} mod {a.group.size}"
    if a.group.kind == FREE_ABELIAN:
        return "(" + ",".join(str(v) for v in a.payload) + ")"
    return _render_matrix(a.payload)


STRICT = "strict"
SYMMETRIZE = "symmetrize"


@dataclass(frozen=True)
class GeneratingSet:
    """Symmetric, identity-free set of elements in canonical-key order."""

    group: GroupDescriptor
    elements: tuple[GroupElement, ...]
    key_index: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: GroupElement) -> bool:
        return canonical_key(a) in self.key_index

    def index(self, a: GroupElement) -> int:
        return self.key_index[canonical_key(a)]


def make_generating_set(
    group: GroupDescriptor, elems: Iterable[GroupElement], policy: str = STRICT
) -> GeneratingSet:
    if policy not in (STRICT, SYMMETRIZE):
        raise InputError(f"unknown policy {policy!r}")
    elems = list(elems)
    if not elems:
        raise InputError("generating set is empty")
    e_key = canonical_key(identity(group))
    by_key: dict[bytes, GroupElement] = {}
    for a in elems:
        if a.group != group:
            raise InputError(f"element {render(a)} is not in {group.describe()}")
        k = canonical_key(a)
        if k == e_key:
            raise InputError("identity element is not allowed in S")
        by_key.setdefault(k, a)
    for k, a in list(by_key.items()):
        b = inverse(a)
        kb = canonical_key(b)
        if kb not in by_key:
            if policy == STRICT:
                raise InputError(f"S is not symmetric: inverse of {render(a)} ({render(b)}) is missing")
            by_key[kb] = b
    keys = sorted(by_key)
    ordered = tuple(by_key[k] for k in keys)
    return GeneratingSet(group, ordered, {k: i for i, k in enumerate(keys)})
