"""ACI-matrices: matrices of affine forms in which no variable is shared by two columns."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    CrossColumnVariable,
    DimensionMismatch,
    EmptyMatrix,
    EmptySelection,
    FieldMismatch,
    ForeignAssignment,
    IndexOutOfRange,
    MissingAssignment,
    SingularMatrix,
)
from .gf import Field, FieldElement

VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


def check_variable(name: str) -> str:
    if not isinstance(name, str) or not VAR_RE.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    return name


@dataclass(frozen=True)
class AffineForm:
    """``const + sum(coef * var)``; terms sorted by variable, no zero coefficients."""

    const: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if any(c == 0 for _, c in self.terms):
            object.__setattr__(self, "terms", tuple((v, c) for v, c in self.terms if c))
        if list(self.terms) != sorted(self.terms):
            object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @classmethod
    def var(cls, name: str, coef: int = 1, const: int = 0) -> "AffineForm":
        return cls(const, ((check_variable(name), coef),))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.terms)

    def coef(self, var: str) -> int:
        for v, c in self.terms:
            if v == var:
                return c
        return 0

    @property
    def is_constant(self) -> bool:
        return not self.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.const == 0

    def evaluate(self, F: Field, assignment: Mapping[str, int]) -> int:
        acc = self.const
        for v, c in self.terms:
            acc = F.add(acc, F.mul(c, assignment[v]))
        return acc


ZERO = AffineForm()
ONE = AffineForm(1)


def lincomb(F: Field, pairs: Iterable[tuple[int, AffineForm]]) -> AffineForm:
    """``sum(c * f)`` over (coefficient, form) pairs."""
    const = 0
    terms: dict[str, int] = {}
    for c, f in pairs:
        if not c:
            continue
        if f.const:
            const = F.add(const, F.mul(c, f.const))
        for v, a in f.terms:
            terms[v] = F.add(terms.get(v, 0), F.mul(c, a))
    return AffineForm(const, tuple(sorted((v, a) for v, a in terms.items() if a)))


@dataclass(frozen=True)
class ConstantMatrix:
    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged constant matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class ACIMatrix:
    """An m x n grid of affine forms over ``field`` satisfying column independence."""

    field: Field
    rows: tuple[tuple[AffineForm, ...], ...]
    column_vars: tuple[frozenset, ...] = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or not rows[0]:
            raise EmptyMatrix("ACI-matrices need at least one row and one column")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("ragged matrix")
        q = self.field.q
        owner: dict[str, int] = {}
        cols = []
        for j in range(n):
            vs = set()
            for r in rows:
                f = r[j]
                if not isinstance(f, AffineForm):
                    raise TypeError(f"entry {f!r} is not an AffineForm")
                if not 0 <= f.const < q or any(not 0 < c < q for _, c in f.terms):
                    raise ValueError(f"entry {f} has codes outside F_{q}")
                vs.update(f.variables)
            for v in vs:
                if v in owner:
                    raise CrossColumnVariable(v, owner[v], j)
                owner[v] = j
            cols.append(frozenset(vs))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "column_vars", tuple(cols))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set().union(*self.column_vars)))

    def entry(self, i: int, j: int) -> AffineForm:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[AffineForm, ...]:
        return tuple(r[j] for r in self.rows)

    def generators(self, j: int) -> list[list[int]]:
        """Column j as ``[c, a_1, ..., a_d]``: constant column then one coefficient
        column per variable (sorted).  Returned as a list of length-m vectors."""
        col = self.column(j)
        gens = [[f.const for f in col]]
        for v in sorted(self.column_vars[j]):
            gens.append([f.coef(v) for f in col])
        return gens

    @property
    def is_constant(self) -> bool:
        return not any(self.column_vars)

    def constant_part(self) -> ConstantMatrix:
        return ConstantMatrix(self.field, tuple(tuple(f.const for f in r) for r in self.rows))

    def __str__(self):
        from .io import format_form

        return "\n".join(
            "[ " + ", ".join(format_form(self.field, f) for f in r) + " ]" for r in self.rows
        )


def validate(F: Field, raw: Sequence[Sequence[AffineForm]]) -> ACIMatrix:
    return ACIMatrix(F, tuple(tuple(r) for r in raw))


def from_constant(F: Field, rows: Sequence[Sequence[int]]) -> ACIMatrix:
    return ACIMatrix(F, tuple(tuple(AffineForm(int(x)) for x in r) for r in rows))


def to_code(F: Field, value) -> int:
    if isinstance(value, FieldElement):
        if value.field != F:
            raise FieldMismatch("assignment value from another field")
        return value.code
    if not 0 <= int(value) < F.q:
        raise ValueError(f"{value} is not an element code of F_{F.q}")
    return int(value)


def complete(A: ACIMatrix, assignment: Mapping[str, int]) -> ConstantMatrix:
    """Evaluate every entry under a total assignment of A's variables."""
    F = A.field
    vs = set(A.variables)
    for v in assignment:
        if v not in vs:
            raise ForeignAssignment(v)
    for v in A.variables:
        if v not in assignment:
            raise MissingAssignment(v)
    vals = {v: to_code(F, x) for v, x in assignment.items()}
    return ConstantMatrix(F, tuple(tuple(f.evaluate(F, vals) for f in r) for r in A.rows))


@dataclass(frozen=True)
class Equivalence:
    """Witness of ``B = T A Q``: column k of B is column ``perm[k]`` of ``T A``."""

    T: ConstantMatrix
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")
        if self.T.m != self.T.n:
            raise DimensionMismatch("T must be square")
        if not linalg.is_nonsingular(self.T.field, self.T.rows):
            raise SingularMatrix("T is singular")

    @property
    def m(self) -> int:
        return self.T.m

    @property
    def n(self) -> int:
        return len(self.perm)


def identity_equivalence(F: Field, m: int, n: int) -> Equivalence:
    return Equivalence(ConstantMatrix(F, linalg.identity(m)), tuple(range(n)))


def make_equivalence(F: Field, T: Sequence[Sequence[int]], perm: Sequence[int]) -> Equivalence:
    return Equivalence(ConstantMatrix(F, tuple(tuple(r) for r in T)), tuple(perm))


def compose(outer: Equivalence, inner: Equivalence) -> Equivalence:
    """The equivalence applying ``inner`` first, then ``outer``."""
    if outer.m != inner.m or outer.n != inner.n:
        raise DimensionMismatch("cannot compose equivalences of different sizes")
    F = outer.T.field
    T = linalg.matmul(F, outer.T.rows, inner.T.rows)
    return make_equivalence(F, T, [inner.perm[k] for k in outer.perm])


def embed(E: Equivalence, m: int, n: int, row_off: int, col_off: int) -> Equivalence:
    """Extend a block equivalence to act on rows/columns starting at the offsets."""
    F = E.T.field
    T = linalg.identity(m)
    for i, row in enumerate(E.T.rows):
        T[row_off + i][row_off:row_off + len(row)] = list(row)
    perm = list(range(n))
    for k, p in enumerate(E.perm):
        perm[col_off + k] = col_off + p
    return make_equivalence(F, T, perm)


def row_permutation(F: Field, order: Sequence[int], n: int) -> Equivalence:
    """Equivalence whose new row i is old row ``order[i]``."""
    m = len(order)
    T = [[1 if c == order[i] else 0 for c in range(m)] for i in range(m)]
    return make_equivalence(F, T, range(n))


def apply_equivalence(A: ACIMatrix, E: Equivalence) -> ACIMatrix:
    F = A.field
    if E.T.field != F:
        raise FieldMismatch("equivalence over another field")
    if E.m != A.m or E.n != A.n:
        raise DimensionMismatch(f"witness is {E.m}x{E.n}, matrix is {A.m}x{A.n}")
    cols = [A.column(p) for p in E.perm]
    rows = []
    for trow in E.T.rows:
        nz = [(c, k) for k, c in enumerate(trow) if c]
        rows.append(tuple(lincomb(F, ((c, col[k]) for c, k in nz)) for col in cols))
    return ACIMatrix(F, tuple(rows))


def permute(A: ACIMatrix, row_order: Sequence[int], col_order: Sequence[int]) -> ACIMatrix:
    return ACIMatrix(A.field, tuple(tuple(A.rows[i][j] for j in col_order) for i in row_order))


def submatrix(A: ACIMatrix, rows: Sequence[int], cols: Sequence[int]) -> ACIMatrix:
    rows, cols = list(rows), list(cols)
    if not rows or not cols:
        raise EmptySelection("submatrix needs at least one row and one column")
    for idx, bound in ((rows, A.m), (cols, A.n)):
        bad = [i for i in idx if not 0 <= i < bound]
        if bad:
            raise IndexOutOfRange(f"index {bad[0]} out of range(0, {bound})")
    return permute(A, rows, cols)


def delete_row(A: ACIMatrix, i: int) -> ACIMatrix:
    return submatrix(A, [r for r in range(A.m) if r != i], range(A.n))


def delete_column(A: ACIMatrix, j: int) -> ACIMatrix:
    return submatrix(A, range(A.m), [c for c in range(A.n) if c != j])


def augment(A: ACIMatrix, v: Sequence[int]) -> ACIMatrix:
    """``[A v]`` for a constant column v."""
    if len(v) != A.m:
        raise DimensionMismatch(f"vector of length {len(v)} for {A.m} rows")
    F = A.field
    return ACIMatrix(F, tuple(r + (AffineForm(to_code(F, x)),) for r, x in zip(A.rows, v)))


def hstack(*blocks: ACIMatrix) -> ACIMatrix:
    F = blocks[0].field
    if any(b.field != F for b in blocks) or len({b.m for b in blocks}) != 1:
        raise DimensionMismatch("hstack needs equal row counts over one field")
    return ACIMatrix(F, tuple(sum((b.rows[i] for b in blocks), ()) for i in range(blocks[0].m)))


def vstack(*blocks: ACIMatrix) -> ACIMatrix:
    F = blocks[0].field
    if any(b.field != F for b in blocks) or len({b.n for b in blocks}) != 1:
        raise DimensionMismatch("vstack needs equal column counts over one field")
    return ACIMatrix(F, sum((b.rows for b in blocks), ()))


def zero_matrix(F: Field, m: int, n: int) -> ACIMatrix:
    return ACIMatrix(F, tuple((ZERO,) * n for _ in range(m)))


def rename(A: ACIMatrix, mapping: Mapping[str, str]) -> ACIMatrix:
    def ren(f: AffineForm) -> AffineForm:
        return AffineForm(f.const, tuple(sorted((mapping.get(v, v), c) for v, c in f.terms)))

    return ACIMatrix(A.field, tuple(tuple(ren(f) for f in r) for r in A.rows))


def random_nonsingular(F: Field, m: int, rng: random.Random) -> list[list[int]]:
    while True:
        T = [[rng.randrange(F.q) for _ in range(m)] for _ in range(m)]
        if linalg.is_nonsingular(F, T):
            return T


def random_equivalence(F: Field, m: int, n: int, rng: random.Random) -> Equivalence:
    perm = list(range(n))
    rng.shuffle(perm)
    return make_equivalence(F, random_nonsingular(F, m, rng), perm)


def random_aci(
    F: Field,
    m: int,
    n: int,
    nvars: int,
    rng: random.Random,
    density: float = 0.5,
    prefix: str = "x",
) -> ACIMatrix:
    """Random ACI-matrix with ``nvars`` variables spread over random columns."""
    owners = [rng.randrange(n) for _ in range(nvars)]
    grid = [[{"const": rng.randrange(F.q) if rng.random() < density else 0, "terms": {}}
             for _ in range(n)] for _ in range(m)]
    for idx, j in enumerate(owners):
        name = f"{prefix}{idx + 1}"
        rows = [i for i in range(m) if rng.random() < density] or [rng.randrange(m)]
        for i in rows:
            grid[i][j]["terms"][name] = rng.randrange(1, F.q)
    return ACIMatrix(F, tuple(
        tuple(AffineForm(e["const"], tuple(sorted(e["terms"].items()))) for e in row)
        for row in grid
    ))


def fresh_names(used: Iterable[str], count: int, prefix: str = "t") -> list[str]:
    """``count`` names ``<prefix>1, <prefix>2, ...`` skipping any in ``used``."""
    used = set(used)
    out, k = [], 1
    while len(out) < count:
        name = f"{prefix}{k}"
        if name not in used:
            out.append(name)
        k += 1
    return out


def column_subset_kernel_input(A: ACIMatrix, cols: Iterable[int]) -> list[list[int]]:
    """The m x K constant matrix whose columns are the generators of ``cols``."""
    gens: list[list[int]] = []
    for j in cols:
        gens.extend(A.generators(j))
    return linalg.transpose(gens) if gens else [[] for _ in range(A.m)]
