"""Constructive canonical forms of constant-rank ACI-matrices.

Every transformation returns an :class:`~acimat.aci.Equivalence` witness ``E``
such that ``apply_equivalence(A, E)`` is the claimed shape.  Block coordinates
are half-open ``(start, stop)`` ranges, 0-based.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import linalg
from .aci import (
    ONE,
    ZERO,
    ACIMatrix,
    AffineForm,
    Equivalence,
    apply_equivalence,
    column_subset_kernel_input,
    compose,
    embed,
    fresh_names,
    identity_equivalence,
    make_equivalence,
    random_equivalence,
    submatrix,
)
from .classify import DEFAULT_VECTOR_BUDGET, augmenting_transform, classify, find_augmenting_vector
from .errors import (
    FieldMismatch,
    InfeasibleShape,
    NotClassified,
    NotConstantRank,
    NotSquareFullRank,
    PreconditionViolated,
    VariableClash,
    VerificationFailed,
)
from .gf import Field
from .kernel import split_equivalence, zero_block_search
from .rank import (
    DEFAULT_COMPLETION_BUDGET,
    DEFAULT_SUBSET_BUDGET,
    has_constant_rank,
    rank_set,
)


# -- pivots -------------------------------------------------------------------

@dataclass(frozen=True)
class PivotPlacement:
    pivots: tuple[tuple[str, int], ...]
    witness: Equivalence
    matrix: ACIMatrix


def _swap_equivalence(F: Field, m: int, n: int, i: int, k: int, j: int) -> Equivalence:
    order = list(range(m))
    order[i], order[k] = order[k], order[i]
    cols = list(range(n))
    cols[j], cols[k] = cols[k], cols[j]
    T = [[1 if c == order[r] else 0 for c in range(m)] for r in range(m)]
    return make_equivalence(F, T, cols)


def pivot_reduce(A: ACIMatrix) -> PivotPlacement:
    """Isolate variables on the diagonal one at a time.

    At step k the entries (i, j) with i, j >= k are scanned row-major; the
    first one holding a variable supplies its least variable, which is moved
    to (k, k) and cleared from the rest of column k by row operations.
    """
    F = A.field
    m, n = A.shape
    E = identity_equivalence(F, m, n)
    B = A
    pivots = []
    for k in range(min(m, n)):
        hit = next(
            ((i, j, B.entry(i, j).terms[0][0])
             for i in range(k, m) for j in range(k, n) if B.entry(i, j).terms),
            None,
        )
        if hit is None:
            break
        i, j, v = hit
        P = _swap_equivalence(F, m, n, i, k, j)
        B, E = apply_equivalence(B, P), compose(P, E)
        a = B.entry(k, k).coef(v)
        T = linalg.identity(m)
        for r in range(m):
            c = B.entry(r, k).coef(v)
            if r != k and c:
                T[r][k] = F.neg(F.div(c, a))
        L = make_equivalence(F, T, range(n))
        B, E = apply_equivalence(B, L), compose(L, E)
        pivots.append((v, k))
    return PivotPlacement(tuple(pivots), E, B)


# -- square full rank -----------------------------------------------------------

def _triangularize(A: ACIMatrix) -> Equivalence:
    F = A.field
    n = A.n
    for j in range(n):
        others = [c for c in range(n) if c != j]
        G = column_subset_kernel_input(A, others)
        for g in A.generators(j)[1:]:
            for i in range(n):
                G[i].append(g[i])
        K = linalg.left_kernel(F, G, n)
        const = A.generators(j)[0]
        for t in K:
            val = linalg.dot(F, t, const)
            if val:
                t = [F.div(x, val) for x in t]
                break
        else:
            continue
        top = linalg.extend_to_basis(F, [t], n)
        E1 = make_equivalence(F, top + [t], others + [j])
        if n == 1:
            return E1
        B = apply_equivalence(A, E1)
        inner = _triangularize(submatrix(B, range(n - 1), range(n - 1)))
        return compose(embed(inner, n, n, 0, 0), E1)
    raise NotSquareFullRank("no column can be isolated; matrix is not square full rank")


def triangularize_square(
    A: ACIMatrix, check: bool = True, limit: int = DEFAULT_COMPLETION_BUDGET
) -> Equivalence:
    """Witness bringing a square full rank matrix to unit upper triangular form."""
    if A.m != A.n or (check and not has_constant_rank(A, A.n, limit)):
        raise NotSquareFullRank(f"{A.m}x{A.n} matrix is not square full rank")
    return _triangularize(A)


def is_unit_upper_triangular(A: ACIMatrix) -> bool:
    return A.m == A.n and all(
        (A.entry(i, j) == ONE) if i == j else A.entry(i, j).is_zero
        for i in range(A.n) for j in range(i + 1)
    )


# -- wide and tall blocks ---------------------------------------------------------

@dataclass(frozen=True)
class BlockReduction:
    """Result of :func:`reduce_wide` / :func:`reduce_tall` on one block.

    ``rows``/``cols`` locate the surviving block inside ``matrix``.
    """

    tag: str
    witness: Equivalence
    matrix: ACIMatrix
    rows: tuple[int, int]
    cols: tuple[int, int]
    deleted_columns: tuple[int, ...] = ()
    augmenting_vectors: tuple[tuple[int, ...], ...] = ()


def reduce_wide(
    A: ACIMatrix, check: bool = True, limit: int = DEFAULT_COMPLETION_BUDGET
) -> BlockReduction:
    """``A ~ [B *]`` with B triangular or minimal full rank (A of constant rank m < n)."""
    F = A.field
    m, n = A.shape
    if m >= n or (check and not has_constant_rank(A, m, limit)):
        raise PreconditionViolated(f"need constant rank m < n, got a {m}x{n} matrix")
    keep = list(range(n))
    deleted = []
    changed = True
    while changed and len(keep) > m:
        changed = False
        for j in keep:
            rest = [c for c in keep if c != j]
            if has_constant_rank(submatrix(A, range(m), rest), m, limit):
                keep, changed = rest, True
                deleted.append(j)
                break
    E = make_equivalence(F, linalg.identity(m), keep + sorted(deleted))
    width = len(keep)
    tag = "minimal_fr"
    if width == m:
        inner = _triangularize(submatrix(A, range(m), keep))
        E = compose(embed(inner, m, n, 0, 0), E)
        tag = "triangular"
    return BlockReduction(tag, E, apply_equivalence(A, E), (0, m), (0, width), tuple(deleted))


def reduce_tall(
    A: ACIMatrix,
    check: bool = True,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
) -> BlockReduction:
    """``A ~ [*; C]`` with C triangular or maximal full rank (A of constant rank n < m).

    While the bottom block has an augmenting vector v, a T with ``T v = e_1``
    makes its first row deletable; that row joins the top part.
    """
    F = A.field
    m, n = A.shape
    if n >= m or (check and not has_constant_rank(A, n, limit)):
        raise PreconditionViolated(f"need constant rank n < m, got a {m}x{n} matrix")
    E = identity_equivalence(F, m, n)
    B = A
    top = 0
    used = []
    while m - top > n:
        C = submatrix(B, range(top, m), range(n))
        v = find_augmenting_vector(C, n, check=False, limit=limit, vector_limit=vector_limit)
        if v is None:
            break
        used.append(v)
        step = embed(make_equivalence(F, augmenting_transform(F, v), range(n)), m, n, top, 0)
        B, E = apply_equivalence(B, step), compose(step, E)
        top += 1
    tag = "maximal_fr"
    if m - top == n:
        inner = _triangularize(submatrix(B, range(top, m), range(n)))
        step = embed(inner, m, n, top, 0)
        B, E = apply_equivalence(B, step), compose(step, E)
        tag = "triangular"
    return BlockReduction(tag, E, B, (top, m), (0, n), (), tuple(used))


# -- zero blocks and the canonical form --------------------------------------------

@dataclass(frozen=True)
class ZeroBlock:
    r: int
    s: int
    witness: Equivalence
    columns: tuple[int, ...]


def find_zero_block(
    A: ACIMatrix,
    rho: int,
    check: bool = True,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    subset_limit: int = DEFAULT_SUBSET_BUDGET,
) -> Optional[ZeroBlock]:
    """Witness of ``T A Q = [A11 A12; 0_{r x s} A22]`` with ``(m-r)+(n-s) = rho``."""
    m, n = A.shape
    if not 1 <= rho < min(m, n):
        raise PreconditionViolated(f"zero blocks need 1 <= rho < min(m, n), got rho={rho}")
    if check and not has_constant_rank(A, rho, limit):
        raise NotConstantRank(f"matrix does not have constant rank {rho}")
    found = zero_block_search(A, rho, subset_limit)
    if found is None:
        if check:
            raise VerificationFailed("constant-rank matrix without a certifying zero block")
        return None
    r, s, S, K = found
    return ZeroBlock(r, s, split_equivalence(A, S, K), tuple(S))


@dataclass(frozen=True)
class BlockInfo:
    tag: str
    rows: tuple[int, int]
    cols: tuple[int, int]
    rank: int


@dataclass(frozen=True)
class BlockDecomposition:
    """``T A Q = [B * *; 0 0 *; 0 0 C]`` with void parts per ``case``.

    ``r``, ``s`` are the zero block's size (None outside case iv); ``B`` and
    ``C`` are None when the case has no such block.
    """

    case: str
    rank: int
    r: Optional[int]
    s: Optional[int]
    B: Optional[BlockInfo]
    C: Optional[BlockInfo]
    witness: Equivalence
    matrix: ACIMatrix


def _echo_elimination(M: ACIMatrix, c_rows: tuple[int, int], c_cols: tuple[int, int]) -> Optional[Equivalence]:
    """Row operations clearing C's pivots from the rows above C.

    A pivot of C's row k is its least variable occurring in no other row of C.
    """
    F = M.field
    lo, hi = c_rows
    T = linalg.identity(M.m)
    touched = False
    for k in range(lo, hi):
        cand = sorted(
            v for j in range(*c_cols) for v in M.entry(k, j).variables
            if all(not M.entry(o, j).coef(v) for o in range(lo, hi) if o != k)
        )
        if not cand:
            continue
        v = cand[0]
        j = next(j for j in range(*c_cols) if M.entry(k, j).coef(v))
        a = M.entry(k, j).coef(v)
        for i in range(lo):
            c = M.entry(i, j).coef(v)
            if c:
                T[i][k] = F.neg(F.div(c, a))
                touched = True
    return make_equivalence(F, T, range(M.n)) if touched else None


def _finish(case, rho, r, s, Binfo, Cinfo, E, A) -> BlockDecomposition:
    M = apply_equivalence(A, E)
    if Cinfo is not None and Cinfo.rows[0] > 0:
        echo = _echo_elimination(M, Cinfo.rows, Cinfo.cols)
        if echo is not None:
            E = compose(echo, E)
            M = apply_equivalence(A, E)
    return BlockDecomposition(case, rho, r, s, Binfo, Cinfo, E, M)


def canonical_decomposition(
    A: ACIMatrix,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
    subset_limit: int = DEFAULT_SUBSET_BUDGET,
) -> BlockDecomposition:
    m, n = A.shape
    rho = rank_set(A, limit, subset_limit).constant
    if rho is None:
        raise NotConstantRank("matrix does not have constant rank")
    if rho == 0:
        raise PreconditionViolated("canonical decomposition needs constant rank >= 1")
    if rho == m == n:
        E = _triangularize(A)
        return _finish("i", rho, None, None, BlockInfo("triangular", (0, n), (0, n), n), None, E, A)
    if rho == m:
        W = reduce_wide(A, check=False, limit=limit)
        return _finish("ii", rho, None, None, BlockInfo(W.tag, W.rows, W.cols, m), None, W.witness, A)
    if rho == n:
        H = reduce_tall(A, check=False, limit=limit, vector_limit=vector_limit)
        return _finish("iii", rho, None, None, None, BlockInfo(H.tag, H.rows, H.cols, n), H.witness, A)

    Z = find_zero_block(A, rho, check=False, limit=limit, subset_limit=subset_limit)
    if Z is None:
        raise VerificationFailed("constant-rank matrix without a certifying zero block")
    r, s = Z.r, Z.s
    E = Z.witness
    M = apply_equivalence(A, E)
    Binfo = Cinfo = None
    if r < m:
        W = reduce_wide(submatrix(M, range(m - r), range(s)), check=False, limit=limit)
        E = compose(embed(W.witness, m, n, 0, 0), E)
        Binfo = BlockInfo(W.tag, W.rows, W.cols, m - r)
    if s < n:
        A22 = submatrix(M, range(m - r, m), range(s, n))
        H = reduce_tall(A22, check=False, limit=limit, vector_limit=vector_limit)
        E = compose(embed(H.witness, m, n, m - r, s), E)
        off = m - r
        Cinfo = BlockInfo(H.tag, (off + H.rows[0], off + H.rows[1]), (s, n), n - s)
    case = "iv-a" if Binfo and Cinfo else ("iv-b" if Binfo else "iv-c")
    return _finish(case, rho, r, s, Binfo, Cinfo, E, A)


# -- cores --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoreCertificate:
    """``core`` is the top-left ``rows x cols`` block of ``apply_equivalence(A, witness)``."""

    witness: Equivalence
    rows: tuple[int, int]
    cols: tuple[int, int]
    core: ACIMatrix
    rank: int
    decomposition: BlockDecomposition


def extract_core(
    A: ACIMatrix,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
    subset_limit: int = DEFAULT_SUBSET_BUDGET,
) -> CoreCertificate:
    """A completely irreducible block of the same constant rank, moved top-left."""
    D = canonical_decomposition(A, limit, vector_limit, subset_limit)
    F = A.field
    m, n = A.shape
    B, C = D.B, D.C
    row_order: list[int] = []
    col_order: list[int] = []
    if B is not None:
        row_order += list(range(*B.rows))
        col_order += list(range(*B.cols))
    if C is not None:
        row_order += list(range(*C.rows))
        col_order += list(range(*C.cols))
    h, w = len(row_order), len(col_order)
    row_order += [i for i in range(m) if i not in row_order]
    col_order += [j for j in range(n) if j not in col_order]
    T = [[1 if c == row_order[i] else 0 for c in range(m)] for i in range(m)]
    E = compose(make_equivalence(F, T, col_order), D.witness)
    core = submatrix(apply_equivalence(A, E), range(h), range(w))
    verdict = classify(core, limit, vector_limit, rows=False)
    if verdict.constant != D.rank or not verdict.completely_irreducible:
        raise VerificationFailed(
            f"core candidate has rank set {verdict.rank_set} and "
            f"completely_irreducible={verdict.completely_irreducible}"
        )
    return CoreCertificate(E, (0, h), (0, w), core, D.rank, D)


# -- composing blocks ----------------------------------------------------------------

# (A11 kind, A22 kind) -> (case label, predicted complete irreducibility)
COMPOSITION_TABLE = {
    ("square", "square"): ("i", True),
    ("square", "minimal"): ("ii", None),
    ("square", "maximal"): ("iii", True),
    ("minimal", "square"): ("iv", True),
    ("minimal", "minimal"): ("v", None),
    ("minimal", "maximal"): ("vi", True),
    ("maximal", "square"): ("vii", True),
    ("maximal", "minimal"): ("viii", None),
    ("maximal", "maximal"): ("ix", True),
}


@dataclass(frozen=True)
class Composition:
    matrix: ACIMatrix
    case: str
    kinds: tuple[str, str]
    predicted: Optional[bool]


def full_rank_kind(A: ACIMatrix, limit: int = DEFAULT_COMPLETION_BUDGET,
                   vector_limit: int = DEFAULT_VECTOR_BUDGET) -> Optional[str]:
    c = classify(A, limit, vector_limit, rows=False)
    if c.square_fr:
        return "square"
    if c.minimal_fr:
        return "minimal"
    if c.maximal_fr:
        return "maximal"
    return None


def _random_filler(F: Field, m: int, n: int, used: set[str], rng: random.Random) -> ACIMatrix:
    names = iter(fresh_names(used, m * n))
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            const = rng.randrange(F.q)
            if rng.random() < 0.25:
                row.append(AffineForm(const, ((next(names), rng.randrange(1, F.q)),)))
            else:
                row.append(AffineForm(const))
        rows.append(tuple(row))
    return ACIMatrix(F, tuple(rows))


def compose_blocks(
    A11: ACIMatrix,
    A22: ACIMatrix,
    filler: Union[str, ACIMatrix] = "zeros",
    seed: Optional[int] = None,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
) -> Composition:
    """``[A11 A12; 0 A22]`` plus the complete-irreducibility verdict the table predicts.

    ``filler`` is ``"zeros"``, ``"random"`` (random constants and fresh
    variables ``t1, t2, ...``) or an explicit A12 block.
    """
    F = A11.field
    if A22.field != F:
        raise FieldMismatch("blocks over different fields")
    clash = set(A11.variables) & set(A22.variables)
    if clash:
        raise VariableClash(f"blocks share variables {sorted(clash)}")
    kinds = []
    for name, blk in (("A11", A11), ("A22", A22)):
        kind = full_rank_kind(blk, limit, vector_limit)
        if kind is None:
            raise NotClassified(f"{name} is not square, minimal or maximal full rank")
        kinds.append(kind)
    m1, n2 = A11.m, A22.n
    if isinstance(filler, ACIMatrix):
        if filler.shape != (m1, n2):
            raise PreconditionViolated(f"filler must be {m1}x{n2}")
        if filler.field != F:
            raise FieldMismatch("filler over a different field")
        A12 = filler
    elif filler == "zeros":
        A12 = ACIMatrix(F, tuple((ZERO,) * n2 for _ in range(m1)))
    elif filler == "random":
        A12 = _random_filler(F, m1, n2, set(A11.variables) | set(A22.variables), random.Random(seed))
    else:
        raise ValueError(f"unknown filler {filler!r}")
    rows = [a + b for a, b in zip(A11.rows, A12.rows)]
    rows += [(ZERO,) * A11.n + b for b in A22.rows]
    case, predicted = COMPOSITION_TABLE[tuple(kinds)]
    return Composition(ACIMatrix(F, tuple(rows)), case, tuple(kinds), predicted)


# -- generators ------------------------------------------------------------------------

def minimal_gadget(F: Field, names: Sequence[str]) -> ACIMatrix:
    """The 2 x (q+1) minimal full rank matrix ``[1+f_j x_j ... x_{q+1}; x_j ... 1]``."""
    q = F.q
    top, bottom = [], []
    for j in range(q):
        x = names[j]
        top.append(AffineForm(1, ((x, j),) if j else ()))
        bottom.append(AffineForm.var(x))
    top.append(AffineForm.var(names[q]))
    bottom.append(ONE)
    return ACIMatrix(F, (tuple(top), tuple(bottom)))


def maximal_gadget(F: Field, names: Sequence[str]) -> ACIMatrix:
    """The 2q x (q+1) maximal full rank matrix ``[I_q | x_{q+1} - f_i; diag(x_i) | 1]``."""
    q = F.q
    last = names[q]
    rows = []
    for i in range(q):
        row = [ONE if c == i else ZERO for c in range(q)]
        row.append(AffineForm(F.neg(i), ((last, 1),)))
        rows.append(tuple(row))
    for i in range(q):
        row = [AffineForm.var(names[i]) if c == i else ZERO for c in range(q)]
        row.append(ONE)
        rows.append(tuple(row))
    return ACIMatrix(F, tuple(rows))


class _Entries:
    """Random entries drawing fresh variables ``x1, x2, ...`` while a budget lasts."""

    def __init__(self, F: Field, rng: random.Random, max_vars: int):
        self.F, self.rng, self.left, self.count = F, rng, max_vars, 0

    def name(self) -> str:
        self.count += 1
        return f"x{self.count}"

    def names(self, k: int) -> list[str]:
        self.left -= k
        return [self.name() for _ in range(k)]

    def entry(self) -> AffineForm:
        const = self.rng.randrange(self.F.q)
        if self.left > 0 and self.rng.random() < 0.5:
            self.left -= 1
            return AffineForm(const, ((self.name(), self.rng.randrange(1, self.F.q)),))
        return AffineForm(const)

    def block(self, m: int, n: int) -> list[list[AffineForm]]:
        return [[self.entry() for _ in range(n)] for _ in range(m)]

    def triangular(self, n: int) -> list[list[AffineForm]]:
        return [[ONE if i == j else (self.entry() if j > i else ZERO) for j in range(n)]
                for i in range(n)]


def _wide_block(gen: _Entries, rows: int, cols: int, gadget: Optional[ACIMatrix]) -> list[list[AffineForm]]:
    core = [list(r) for r in gadget.rows] if gadget is not None else gen.triangular(rows)
    extra = gen.block(rows, cols - len(core[0]))
    return [a + b for a, b in zip(core, extra)]


def _tall_block(gen: _Entries, rows: int, cols: int, gadget: Optional[ACIMatrix]) -> list[list[AffineForm]]:
    core = [list(r) for r in gadget.rows] if gadget is not None else gen.triangular(cols)
    return gen.block(rows - len(core), cols) + core


def gen_constant_rank(
    m: int,
    n: int,
    rho: int,
    field: Field,
    seed: Optional[int] = None,
    gadget: Optional[str] = None,
    max_vars: Optional[int] = None,
    equivalence: bool = True,
) -> ACIMatrix:
    """Random m x n matrix of constant rank ``rho`` built as ``[B X; 0 C]``.

    B is unit triangular (or the minimal gadget) padded with random columns,
    C is unit triangular (or the maximal gadget) under random rows.  Random
    entries get fresh variables until ``max_vars`` is used up (default: as
    many as keep ``q**vars <= 2**12``).  A random equivalence scrambles the
    result unless ``equivalence`` is False.
    """
    F = field
    q = F.q
    if not 1 <= rho <= min(m, n):
        raise PreconditionViolated(f"need 1 <= rho <= min(m, n), got rho={rho} for {m}x{n}")
    rng = random.Random(seed)
    if max_vars is None:
        max_vars = int(math.log(2**12, q) + 1e-9)
    gen = _Entries(F, rng, max_vars)

    if gadget not in (None, "minimal", "maximal"):
        raise ValueError(f"unknown gadget {gadget!r}")
    # rho1 = rows of B, rho2 = rho - rho1 = columns of C
    if rho == m:
        lo = hi = m
    elif rho == n:
        lo = hi = 0
    else:
        lo, hi = max(0, rho - n + 1), min(rho, m - 1)
    if gadget == "minimal":
        lo = hi = 2 if lo <= 2 <= hi else -1
    elif gadget == "maximal":
        lo = hi = rho - (q + 1) if lo <= rho - (q + 1) <= hi else -1
    if lo < 0:
        raise InfeasibleShape(f"no {gadget or 'plain'} layout of rank {rho} fits {m}x{n} over F_{q}")
    rho1 = rng.randint(lo, hi)
    rho2 = rho - rho1
    s = n - rho2
    r = m - rho1

    gmin = gmax = None
    if gadget == "minimal":
        if s < q + 1:
            raise InfeasibleShape(f"minimal gadget needs {q + 1} columns, block has {s}")
        gmin = minimal_gadget(F, gen.names(q + 1))
    if gadget == "maximal":
        if r < 2 * q:
            raise InfeasibleShape(f"maximal gadget needs {2 * q} rows, block has {r}")
        gmax = maximal_gadget(F, gen.names(q + 1))

    rows: list[list[AffineForm]] = []
    if rho1:
        top = _wide_block(gen, rho1, s, gmin)
        rows += [t + x for t, x in zip(top, gen.block(rho1, n - s))]
    if r:
        bottom = _tall_block(gen, r, rho2, gmax) if rho2 else [[] for _ in range(r)]
        rows += [[ZERO] * s + b for b in bottom]
    A = ACIMatrix(F, tuple(tuple(row) for row in rows))
    if equivalence:
        A = apply_equivalence(A, random_equivalence(F, m, n, rng))
    return A
