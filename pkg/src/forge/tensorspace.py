"""Exact rational tensors over based vector spaces.

Conventions used throughout the package:

* scalars are ``fractions.Fraction``;
* ``wedge(v1, ..., vk) = sum_sigma sign(sigma) v_sigma(1) (x) ... (x) v_sigma(k)``
  with no 1/k! factor, so a skew tensor stores the coefficient of the basis
  wedge ``e_I`` at its increasing index tuple ``I``;
* the pairing of ``wedge^k V`` with ``wedge^k V*`` is the determinant pairing,
  i.e. ``(1/k!)`` times the full contraction;
* ``sharp(r)(xi) = sum_i <xi, u_i> v_i`` for ``r = sum_i u_i (x) v_i``
  (contraction in the first slot).

Factor positions in direct sums are 1-based, basis indices are 0-based.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class SpaceMismatch(ValueError):
    pass


class OrderMismatch(ValueError):
    pass


class NoDual(ValueError):
    pass


class NotSkew(ValueError):
    pass


def q(x) -> Fraction:
    """Coerce ints, strings like "p/q" and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            num, den = x.split("/")
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


# --------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    name: str
    labels: tuple
    summands: tuple = ()

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"basis labels of {self.name} are not distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def offsets(self) -> tuple:
        out, o = [], 0
        for W in self.summands:
            out.append(o)
            o += W.dim
        return tuple(out)

    def __repr__(self):
        return f"Space({self.name}, dim={self.dim})"


def _toggle_star(s: str) -> str:
    return s[:-1] if s.endswith("*") else s + "*"


@lru_cache(maxsize=None)
def dual(V: Space) -> Space:
    """The registered dual space; its basis is the dual basis of V's basis."""
    if V.summands:
        return direct_sum([dual(W) for W in V.summands])
    return Space(_toggle_star(V.name), tuple(_toggle_star(l) for l in V.labels))


def is_dual_pair(V: Space, W: Space) -> bool:
    return W == dual(V)


@lru_cache(maxsize=None)
def _direct_sum(spaces: tuple) -> Space:
    labels = [l for W in spaces for l in W.labels]
    if len(set(labels)) != len(labels):
        labels = [f"{l}_{j + 1}" for j, W in enumerate(spaces) for l in W.labels]
    name = "(" + "+".join(W.name for W in spaces) + ")"
    return Space(name, tuple(labels), tuple(spaces))


def direct_sum(spaces: Sequence[Space]) -> Space:
    return _direct_sum(tuple(spaces))


def power(V: Space, n: int) -> Space:
    return direct_sum([V] * n)


# --------------------------------------------------------------------------
# tensors


def _same(a, b) -> bool:
    return a is b or a == b


class Tensor:
    """Sparse order-k tensor: maps index tuples to nonzero Fractions.

    Instances are treated as immutable.
    """

    __slots__ = ("spaces", "entries")

    def __init__(self, spaces, entries: Mapping | None = None):
        self.spaces = tuple(spaces)
        ent = {}
        if entries:
            dims = [V.dim for V in self.spaces]
            for key, v in entries.items():
                key = tuple(key)
                if len(key) != len(dims):
                    raise OrderMismatch(f"index {key} for order {len(dims)}")
                for i, d in zip(key, dims):
                    if not 0 <= i < d:
                        raise IndexError(f"index {key} out of range")
                v = q(v)
                if v:
                    ent[key] = v
        self.entries = ent

    @classmethod
    def _raw(cls, spaces, entries):
        t = cls.__new__(cls)
        t.spaces = spaces
        t.entries = {k: v for k, v in entries.items() if v}
        return t

    # constructors
    @classmethod
    def zero(cls, V: Space, k: int = 1):
        return cls((V,) * k)

    @classmethod
    def basis(cls, V: Space, i: int):
        return cls._raw((V,), {(i,): ONE})

    @classmethod
    def vector(cls, V: Space, coords: Sequence):
        return cls((V,), {(i,): c for i, c in enumerate(coords)})

    @classmethod
    def scalar(cls, c):
        return cls((), {(): c})

    @classmethod
    def from_labels(cls, V: Space, terms: Iterable):
        """terms: iterable of (coeff, label_1, ..., label_k)."""
        out = {}
        k = None
        for term in terms:
            c, labels = q(term[0]), term[1:]
            k = len(labels) if k is None else k
            key = tuple(V.index(l) for l in labels)
            out[key] = out.get(key, ZERO) + c
        return cls((V,) * (k or 0), out)

    # shape
    @property
    def order(self) -> int:
        return len(self.spaces)

    @property
    def space(self) -> Space:
        if not self.spaces:
            raise OrderMismatch("order-0 tensor has no space")
        V = self.spaces[0]
        for W in self.spaces[1:]:
            if not _same(V, W):
                raise SpaceMismatch("tensor slots live on different spaces")
        return V

    def coords(self) -> list:
        if self.order != 1:
            raise OrderMismatch("coords() needs a vector")
        c = [ZERO] * self.spaces[0].dim
        for (i,), v in self.entries.items():
            c[i] = v
        return c

    def value(self) -> Fraction:
        if self.order != 0:
            raise OrderMismatch("value() needs an order-0 tensor")
        return self.entries.get((), ZERO)

    def __getitem__(self, key) -> Fraction:
        if not isinstance(key, tuple):
            key = (key,)
        return self.entries.get(key, ZERO)

    # arithmetic
    def _check(self, other):
        if len(self.spaces) != len(other.spaces):
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        for a, b in zip(self.spaces, other.spaces):
            if not _same(a, b):
                raise SpaceMismatch(f"{a} vs {b}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return Tensor._raw(self.spaces, out)

    __radd__ = __add__

    def __neg__(self):
        return Tensor._raw(self.spaces, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = q(c)
        if not c:
            return Tensor._raw(self.spaces, {})
        return Tensor._raw(self.spaces, {k: c * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (ONE / q(c))

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if len(self.spaces) != len(other.spaces):
            return False
        return all(_same(a, b) for a, b in zip(self.spaces, other.spaces)) and \
            self.entries == other.entries

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def otimes(self, other):
        out = {}
        for k1, v1 in self.entries.items():
            for k2, v2 in other.entries.items():
                out[k1 + k2] = v1 * v2
        return Tensor._raw(self.spaces + other.spaces, out)

    def permute(self, perm: Sequence[int]):
        """Result slot i carries the original slot perm[i]."""
        perm = tuple(perm)
        spaces = tuple(self.spaces[p] for p in perm)
        return Tensor._raw(spaces, {tuple(k[p] for p in perm): v for k, v in self.entries.items()})

    def alt(self):
        """Unnormalized alternation sum_sigma sign(sigma) sigma.A."""
        k = self.order
        out = {}
        for perm in itertools.permutations(range(k)):
            s = perm_sign(perm)
            for key, v in self.entries.items():
                nk = tuple(key[p] for p in perm)
                out[nk] = out.get(nk, ZERO) + s * v
        return Tensor._raw(self.spaces, out)

    def is_skew(self) -> bool:
        k = self.order
        for key, v in self.entries.items():
            for a in range(k - 1):
                sw = key[:a] + (key[a + 1], key[a]) + key[a + 2:]
                if self.entries.get(sw, ZERO) != -v:
                    return False
        return True

    def is_symmetric(self) -> bool:
        k = self.order
        for key, v in self.entries.items():
            for a in range(k - 1):
                sw = key[:a] + (key[a + 1], key[a]) + key[a + 2:]
                if self.entries.get(sw, ZERO) != v:
                    return False
        return True

    def skew_components(self) -> dict:
        """Coefficients of basis wedges e_I (I increasing) of a skew tensor."""
        return {k: v for k, v in self.entries.items() if all(a < b for a, b in zip(k, k[1:]))}

    def __repr__(self):
        if not self.entries:
            return "0"
        parts = []
        for key in sorted(self.entries):
            v = self.entries[key]
            lab = "(x)".join(V.labels[i] for V, i in zip(self.spaces, key))
            parts.append(f"{v}*{lab}" if lab else str(v))
        return " + ".join(parts)


def perm_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    s = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            s = -s
    return s


def sort_sign(seq: Sequence[int]):
    """(sorted tuple, sign of the sorting permutation), or None on a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return None
    s = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            s = -s
            j -= 1
    return tuple(seq), s


def from_skew_components(V: Space, k: int, comps: Mapping) -> Tensor:
    """Inverse of Tensor.skew_components: sum_I c_I e_I with eq-wedge signs."""
    out = {}
    for I, c in comps.items():
        if not c:
            continue
        for perm in itertools.permutations(range(k)):
            out[tuple(I[p] for p in perm)] = perm_sign(perm) * q(c)
    return Tensor._raw((V,) * k, out)


# --------------------------------------------------------------------------
# wedge, transpose, splitting


def wedge(*vs: Tensor) -> Tensor:
    if len(vs) == 1 and isinstance(vs[0], (list, tuple)):
        vs = tuple(vs[0])
    if not vs:
        return Tensor.scalar(1)
    V = vs[0].spaces[0] if vs[0].order == 1 else None
    for v in vs:
        if v.order != 1:
            raise OrderMismatch("wedge takes vectors")
        if not _same(v.spaces[0], V):
            raise SpaceMismatch("wedge of vectors on different spaces")
    t = vs[0]
    for v in vs[1:]:
        t = t.otimes(v)
    return t.alt()


def wedge_product(A: Tensor, B: Tensor) -> Tensor:
    """A ^ B = Alt(A (x) B)/(a! b!) for skew A, B; extends eq-wedge."""
    a, b = A.order, B.order
    if a == 0:
        return B * A.value()
    if b == 0:
        return A * B.value()
    return A.otimes(B).alt() / (math.factorial(a) * math.factorial(b))


def transpose21(r: Tensor) -> Tensor:
    if r.order != 2:
        raise OrderMismatch("transpose21 needs an order-2 tensor")
    return r.permute((1, 0))


def sym_skew_split(r: Tensor):
    """(Lambda, s) with Lambda skew, s symmetric, r = Lambda + s."""
    r21 = transpose21(r)
    return (r - r21) / 2, (r + r21) / 2


# --------------------------------------------------------------------------
# linear maps and exact linear algebra (sympy DomainMatrix over QQ)


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _dm(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_qq(q(x)) for x in row] for row in rows], (len(rows), ncols), QQ)


def _rows(M: DomainMatrix) -> list:
    return [[q(x) for x in row] for row in M.to_list()]


def rref(rows: Sequence[Sequence], ncols: int):
    """Nonzero rows of the reduced row echelon form and the pivot columns."""
    if not rows:
        return [], ()
    R, piv = _dm(rows, ncols).rref()
    return _rows(R)[: len(piv)], tuple(piv)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {v : rows . v = 0}."""
    if not rows:
        return [[ONE if i == j else ZERO for j in range(ncols)] for i in range(ncols)]
    N = _dm(rows, ncols).nullspace()
    return _rows(N) if N.shape[0] else []


def inverse(rows: Sequence[Sequence]) -> list:
    n = len(rows)
    return _rows(_dm(rows, n).inv())


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return ONE
    return q(_dm(rows, n).det())


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    if not A:
        return []
    nB = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * nB
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> list:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


class LinearMap:
    """Dense rational matrix, rows indexed by the codomain basis."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Space, codomain: Space, matrix):
        m = tuple(tuple(q(x) for x in row) for row in matrix)
        if len(m) != codomain.dim or any(len(row) != domain.dim for row in m):
            raise ValueError(f"matrix shape does not match {domain} -> {codomain}")
        self.domain, self.codomain, self.matrix = domain, codomain, m

    @classmethod
    def identity(cls, V: Space):
        return cls(V, V, [[ONE if i == j else ZERO for j in range(V.dim)] for i in range(V.dim)])

    @classmethod
    def zero(cls, V: Space, W: Space):
        return cls(V, W, [[ZERO] * V.dim for _ in range(W.dim)])

    @classmethod
    def from_columns(cls, V: Space, W: Space, cols: Sequence):
        """cols[i] is the image of the i-th basis vector (Tensor or coords)."""
        cs = [c.coords() if isinstance(c, Tensor) else list(c) for c in cols]
        return cls(V, W, [[cs[i][r] for i in range(V.dim)] for r in range(W.dim)])

    def column(self, i: int) -> list:
        return [row[i] for row in self.matrix]

    def __call__(self, v: Tensor) -> Tensor:
        if v.order != 1 or not _same(v.spaces[0], self.domain):
            raise SpaceMismatch(f"{self.domain} map applied to {v.spaces}")
        out = {}
        for (i,), c in v.entries.items():
            for r, row in enumerate(self.matrix):
                if row[i]:
                    out[(r,)] = out.get((r,), ZERO) + row[i] * c
        return Tensor._raw((self.codomain,), out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if not _same(other.codomain, self.domain):
            raise SpaceMismatch("composition of incompatible maps")
        return LinearMap(other.domain, self.codomain, matmul(self.matrix, other.matrix))

    def __add__(self, other):
        if not (_same(self.domain, other.domain) and _same(self.codomain, other.codomain)):
            raise SpaceMismatch("sum of maps between different spaces")
        return LinearMap(self.domain, self.codomain,
                         [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return LinearMap(self.domain, self.codomain, [[-a for a in row] for row in self.matrix])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = q(c)
        return LinearMap(self.domain, self.codomain, [[c * a for a in row] for row in self.matrix])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return _same(self.domain, other.domain) and _same(self.codomain, other.codomain) \
            and self.matrix == other.matrix

    __hash__ = None

    def dual(self) -> "LinearMap":
        """The transpose W* -> V*."""
        return LinearMap(dual(self.codomain), dual(self.domain),
                         transpose(self.matrix) if self.matrix else [[] for _ in range(self.domain.dim)])

    def rank(self) -> int:
        return rank(self.matrix, self.domain.dim)

    def image(self) -> "Subspace":
        return Subspace.span(self.codomain, [self.column(i) for i in range(self.domain.dim)])

    def kernel(self) -> "Subspace":
        return Subspace.span(self.domain, nullspace(self.matrix, self.domain.dim))

    def is_invertible(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.rank() == self.domain.dim

    def inverse(self) -> "LinearMap":
        return LinearMap(self.codomain, self.domain, inverse(self.matrix))

    def __repr__(self):
        return f"LinearMap({self.domain.name} -> {self.codomain.name})"


def sharp(r: Tensor) -> LinearMap:
    """r^#: V* -> V, r^#(xi) = sum <xi, u_i> v_i."""
    if r.order != 2:
        raise OrderMismatch("sharp needs an order-2 tensor")
    V = r.space
    if V.dim and dual(V) is None:
        raise NoDual(V.name)
    M = [[ZERO] * V.dim for _ in range(V.dim)]
    for (a, b), v in r.entries.items():
        M[b][a] += v
    return LinearMap(dual(V), V, M)


def pushforward(sigma: LinearMap, A: Tensor) -> Tensor:
    """Apply sigma in every slot of A."""
    for V in A.spaces:
        if not _same(V, sigma.domain):
            raise SpaceMismatch(f"pushforward by a map on {sigma.domain} of a tensor on {V}")
    cols = []
    for i in range(sigma.domain.dim):
        cols.append([(r, row[i]) for r, row in enumerate(sigma.matrix) if row[i]])
    out = {}
    for key, v in A.entries.items():
        for combo in itertools.product(*(cols[i] for i in key)):
            c = v
            for _, x in combo:
                c *= x
            nk = tuple(r for r, _ in combo)
            out[nk] = out.get(nk, ZERO) + c
    return Tensor._raw((sigma.codomain,) * A.order, out)


def evaluate(A: Tensor, covectors: Sequence[Tensor]) -> Fraction:
    """A(xi_1, ..., xi_k) = full contraction slot by slot."""
    if len(covectors) != A.order:
        raise OrderMismatch("wrong number of arguments")
    cs = [xi.coords() for xi in covectors]
    total = ZERO
    for key, v in A.entries.items():
        c = v
        for s, i in enumerate(key):
            c *= cs[s][i]
            if not c:
                break
        total += c
    return total


def extended_pairing(A: Tensor, B: Tensor, form: LinearMap | None = None) -> Fraction:
    """Determinant pairing of wedge^k V with wedge^k W.

    With form=None, B must live on dual(V).  Otherwise form: W -> V* encodes
    <v, w> = form(w)(v).
    """
    if A.order != B.order:
        raise OrderMismatch(f"orders {A.order} and {B.order}")
    if form is not None:
        B = pushforward(form, B)
    for V, W in zip(A.spaces, B.spaces):
        if not _same(W, dual(V)):
            raise NoDual(f"{W} is not registered as the dual of {V}")
    total = ZERO
    for key, v in A.entries.items():
        w = B.entries.get(key)
        if w:
            total += v * w
    return total / math.factorial(A.order)


# --------------------------------------------------------------------------
# direct sums


def block_embedding(S: Space, j: int) -> LinearMap:
    """V_j -> V_1 + ... + V_n (1-based j)."""
    if not S.summands or not 1 <= j <= len(S.summands):
        raise IndexError(f"block {j} of {S}")
    V, off = S.summands[j - 1], S.offsets()[j - 1]
    M = [[ONE if r == off + i else ZERO for i in range(V.dim)] for r in range(S.dim)]
    return LinearMap(V, S, M)


def block_projection(S: Space, j: int) -> LinearMap:
    E = block_embedding(S, j)
    return LinearMap(S, E.domain, transpose(E.matrix))


def direct_sum_embed(A: Tensor, j: int, ambient) -> Tensor:
    """(0, ..., A, ..., 0) in the j-th block (1-based)."""
    S = ambient if isinstance(ambient, Space) else direct_sum(ambient)
    if not S.summands or not 1 <= j <= len(S.summands):
        raise IndexError(f"position {j} out of range")
    off = S.offsets()[j - 1]
    V = S.summands[j - 1]
    for W in A.spaces:
        if not _same(W, V):
            raise SpaceMismatch(f"block {j} is {V}, tensor on {W}")
    return Tensor._raw((S,) * A.order, {tuple(i + off for i in k): v for k, v in A.entries.items()})


def block_tuple(blocks: Sequence[Tensor], ambient=None) -> Tensor:
    """(A_1, ..., A_n) = sum of the block embeddings."""
    S = ambient if ambient is not None else direct_sum([A.space for A in blocks])
    if isinstance(S, (list, tuple)):
        S = direct_sum(S)
    k = blocks[0].order
    out = Tensor.zero(S, k)
    for j, A in enumerate(blocks, start=1):
        out = out + direct_sum_embed(A, j, S)
    return out


def slot_vector(S: Space, j: int, v: Tensor) -> Tensor:
    """(v)_j: the vector v placed in block j."""
    return direct_sum_embed(v, j, S)


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of a based space, stored as an RREF row basis."""

    __slots__ = ("parent", "rows", "pivots")

    def __init__(self, parent: Space, rows, pivots):
        self.parent = parent
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, parent: Space, vectors: Iterable):
        vs = [v.coords() if isinstance(v, Tensor) else [q(x) for x in v] for v in vectors]
        rows, piv = rref(vs, parent.dim)
        return cls(parent, rows, piv)

    @classmethod
    def whole(cls, V: Space):
        return cls.span(V, [[ONE if i == j else ZERO for j in range(V.dim)] for i in range(V.dim)])

    @classmethod
    def zero(cls, V: Space):
        return cls(V, (), ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [Tensor.vector(self.parent, r) for r in self.rows]

    def contains(self, v) -> bool:
        c = v.coords() if isinstance(v, Tensor) else list(v)
        res = list(c)
        for row, p in zip(self.rows, self.pivots):
            a = res[p]
            if a:
                res = [x - a * y for x, y in zip(res, row)]
        return not any(res)

    def coords(self, v) -> list:
        """Coordinates in the RREF basis (read off at the pivots)."""
        c = v.coords() if isinstance(v, Tensor) else list(v)
        if not self.contains(c):
            raise ValueError("vector not in subspace")
        return [c[p] for p in self.pivots]

    def contains_tensor(self, A: Tensor) -> bool:
        """A lies in U (x) ... (x) U."""
        if A.is_zero():
            return True
        M = [[ONE if i == j else ZERO for i in range(self.parent.dim)] for j in self.pivots]
        P = LinearMap(self.parent, Space("_p", tuple(f"p{i}" for i in range(self.dim))), M) \
            if self.dim else None
        if P is None:
            return False
        B = LinearMap(P.codomain, self.parent, transpose(self.rows))
        return pushforward(B, pushforward(P, A)) == A

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return _same(self.parent, other.parent) and self.rows == other.rows

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.parent, list(self.rows) + list(other.rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        n = self.parent.dim
        ann = annihilator(self).rows + annihilator(other).rows
        return Subspace.span(self.parent, nullspace(list(ann), n) if ann else
                             [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Subspace(dim {self.dim} in {self.parent.name})"


def annihilator(U: Subspace) -> Subspace:
    """U^0 in the dual space."""
    return Subspace.span(dual(U.parent), nullspace(list(U.rows), U.parent.dim) if U.rows else
                         [[ONE if i == j else ZERO for j in range(U.parent.dim)]
                          for i in range(U.parent.dim)])
