"""Symplectic linear algebra local models.

Everything a fixed point of the involution needs checked locally: isotropy of
hom images, stabilizer classification for the two torus-versus-additive-group
tables, quadratic maps on ext pairs, the order-two scaling/swap action, the
normal cone quadric, and finite-field enumeration of the incidence fixed
locus.  All checks run over exact rationals or a small prime field.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactnum import (
    ExactMatrix,
    PrimeField,
    PrimeFieldConfig,
    nullspace,
    rank,
)


class StabilizerClass(enum.Enum):
    FULL_SO_W = "full_so_w"
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"
    TRIVIAL = "trivial"


class NotInHomOmegaError(ValueError):
    """The hom's image is not isotropic, so the omega-pullback model
    does not apply."""


class SingularPairingError(ValueError):
    pass


class DegenerateModelError(ValueError):
    """The pairing feeding the normal cone quadric is rank deficient."""


def _frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


@dataclass(frozen=True)
class SymplecticSpace:
    """Even-dimensional space with a nonsingular antisymmetric gram."""

    gram: ExactMatrix

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols or g.rows % 2 != 0:
            raise ValueError("gram must be square of even size")
        if g.transpose() != ExactMatrix([[-x for x in row] for row in g.entries]):
            raise ValueError("gram must be antisymmetric")
        if rank(g) != g.rows:
            raise ValueError("gram must be nonsingular")

    @classmethod
    def standard(cls, m: int) -> "SymplecticSpace":
        """Dimension 2m with gram [[0, I], [-I, 0]]."""
        if m < 1:
            raise ValueError("m must be positive")
        size = 2 * m
        rows = [[0] * size for _ in range(size)]
        for i in range(m):
            rows[i][m + i] = 1
            rows[m + i][i] = -1
        return cls(ExactMatrix(rows))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def omega(self, v: Sequence, w: Sequence) -> Fraction:
        g = self.gram.const_entries()
        v = [Fraction(x) for x in v]
        w = [Fraction(x) for x in w]
        return sum(v[i] * g[i][j] * w[j] for i in range(self.dim) for j in range(self.dim))


#: Hyperbolic gram of the three-dimensional quadratic space carrying the
#: trace form of the rank-three orthogonal Lie algebra model.
HYPERBOLIC_GRAM = ExactMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


@dataclass(frozen=True)
class QuadSpaceW:
    """Three-dimensional quadratic space (w1, w2, w3)."""

    gram: ExactMatrix = HYPERBOLIC_GRAM

    def __post_init__(self):
        g = self.gram
        if g.rows != 3 or g.cols != 3:
            raise ValueError("W is three-dimensional")
        if g.transpose() != g:
            raise ValueError("gram must be symmetric")
        if rank(g) != 3:
            raise ValueError("gram must be nonsingular")

    def kappa(self, v: Sequence, w: Sequence) -> Fraction:
        g = self.gram.const_entries()
        v = [Fraction(x) for x in v]
        w = [Fraction(x) for x in w]
        return sum(v[i] * g[i][j] * w[j] for i in range(3) for j in range(3))


@dataclass(frozen=True)
class HomWE:
    """Linear map W -> E; columns are the images of w1, w2, w3."""

    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.cols != 3:
            raise ValueError("need exactly three columns")

    def columns(self) -> list[tuple[Fraction, ...]]:
        ent = self.matrix.const_entries()
        return [tuple(ent[i][j] for i in range(self.matrix.rows)) for j in range(3)]


def is_isotropic(generators: Sequence[Sequence], space: SymplecticSpace) -> bool:
    """True when the span of the generators is omega-isotropic.

    The empty list spans the zero subspace, which is isotropic.
    """
    gens = [[Fraction(x) for x in g] for g in generators]
    for g in gens:
        if len(g) != space.dim:
            raise ValueError("generator length %d, expected %d" % (len(g), space.dim))
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            if space.omega(gens[i], gens[j]) != 0:
                return False
    return True


def _kernel_of_hom(phi: HomWE) -> tuple[tuple[Fraction, ...], ...]:
    return nullspace(phi.matrix)


def _perp_in_w(vectors: Sequence[Sequence[Fraction]], w_space: QuadSpaceW):
    """kappa-orthogonal complement in W of the span of the given vectors."""
    if not vectors:
        return tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)
        )
    g = w_space.gram.const_entries()
    rows = []
    for v in vectors:
        rows.append([sum(Fraction(v[i]) * g[i][j] for i in range(3)) for j in range(3)])
    return nullspace(ExactMatrix(rows))


def stabilizer_class_omega(
    phi: HomWE, w_space: QuadSpaceW, e_space: SymplecticSpace
) -> StabilizerClass:
    """Classify the stabilizer of a hom with isotropic image.

    rank 0 -> FULL_SO_W; rank >= 2 -> TRIVIAL; rank 1 splits on whether the
    kappa-orthogonal line of ker(phi) is kappa-isotropic (ADDITIVE) or not
    (MULTIPLICATIVE).
    """
    if phi.matrix.rows != e_space.dim:
        raise ValueError("hom target dimension mismatch")
    if not is_isotropic(phi.columns(), e_space):
        raise NotInHomOmegaError("image is not isotropic")
    r = rank(phi.matrix)
    if r == 0:
        return StabilizerClass.FULL_SO_W
    if r >= 2:
        return StabilizerClass.TRIVIAL
    ker = _kernel_of_hom(phi)
    perp = _perp_in_w(ker, w_space)
    if len(perp) != 1:
        raise AssertionError("rank-1 hom must have a line as kernel-perp")
    v = perp[0]
    if w_space.kappa(v, v) == 0:
        return StabilizerClass.ADDITIVE
    return StabilizerClass.MULTIPLICATIVE


def yoneda_omega(phi: HomWE, e_space: SymplecticSpace) -> tuple[Fraction, Fraction, Fraction]:
    """The three coordinates (phi^* omega)(w_i, w_j) for i < j."""
    c = phi.columns()
    return (
        e_space.omega(c[0], c[1]),
        e_space.omega(c[0], c[2]),
        e_space.omega(c[1], c[2]),
    )


@dataclass(frozen=True)
class ExtPair:
    """Off-diagonal ext pair (e12, e21) with a nonsingular pairing.

    Optional diagonal components are carried unused; only their lengths are
    validated.
    """

    e12: tuple
    e21: tuple
    pairing: ExactMatrix | None = None
    diag: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "e12", tuple(Fraction(x) for x in self.e12))
        object.__setattr__(self, "e21", tuple(Fraction(x) for x in self.e21))
        if len(self.e12) != len(self.e21) or not self.e12:
            raise ValueError("e12 and e21 must be nonempty of equal length")
        if self.pairing is None:
            object.__setattr__(self, "pairing", ExactMatrix.identity(len(self.e12)))
        p = self.pairing
        if p.rows != len(self.e12) or p.cols != len(self.e21):
            raise ValueError("pairing shape mismatch")
        if rank(p) != p.rows:
            raise SingularPairingError("pairing is singular")
        if self.diag is not None and len(self.diag) != 2:
            raise ValueError("diag carries exactly (e11, e22)")

    def pair(self) -> Fraction:
        g = self.pairing.const_entries()
        k = len(self.e12)
        return sum(self.e12[i] * g[i][j] * self.e21[j] for i in range(k) for j in range(k))


def yoneda_sigma(pair: ExtPair) -> tuple[Fraction, Fraction]:
    """(alpha, beta) with beta = <e12, e21> and alpha = -beta.

    Membership in the zero locus of the quadratic model is exactly beta == 0.
    """
    beta = pair.pair()
    return (-beta, beta)


def stabilizer_class_sigma(pair: ExtPair) -> StabilizerClass:
    both_zero = all(x == 0 for x in pair.e12) and all(x == 0 for x in pair.e21)
    return StabilizerClass.MULTIPLICATIVE if both_zero else StabilizerClass.TRIVIAL


@dataclass(frozen=True)
class Scale:
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam == 0:
            raise ValueError("scale factor must be nonzero")


@dataclass(frozen=True)
class Swap:
    pass


def po2_act(element, pair: ExtPair) -> tuple[ExtPair, dict]:
    """Act by a scaling or the swap; report how the quadratic value moves.

    Scaling lambda sends (e12, e21) to (lambda e12, e21 / lambda) and
    preserves the pairing value; the swap exchanges the two slots, carries
    the pairing to minus its transpose (the trace pairing anticommutes), and
    negates the value.
    """
    before = pair.pair()
    if isinstance(element, Scale):
        out = ExtPair(
            tuple(element.lam * x for x in pair.e12),
            tuple(x / element.lam for x in pair.e21),
            pair.pairing,
            pair.diag,
        )
        relation = "preserved"
        expected = before
    elif isinstance(element, Swap):
        flipped = ExactMatrix(
            [[-x for x in row] for row in pair.pairing.transpose().entries]
        )
        out = ExtPair(pair.e21, pair.e12, flipped, pair.diag)
        relation = "negated"
        expected = -before
    else:
        raise TypeError("unknown group element %r" % (element,))
    after = out.pair()
    report = {
        "psi_before": before,
        "psi_after": after,
        "relation": relation,
        "ok": after == expected,
    }
    if not report["ok"]:
        raise AssertionError("equivariance failed: %r" % (report,))
    return out, report


@dataclass(frozen=True)
class QuadricModel:
    nvars: int
    gram: ExactMatrix
    rank: int

    @property
    def smooth_in_projective_space(self) -> bool:
        return self.rank == self.nvars

    @property
    def ambient_projective_dim(self) -> int:
        return self.nvars - 1


def pairing_quadric_gram(pairing: ExactMatrix) -> ExactMatrix:
    """Symmetric gram of q(e12, e21) = <e12, e21> on the doubled space."""
    k = pairing.rows
    g = pairing.const_entries()
    size = 2 * k
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(k):
        for j in range(k):
            rows[i][k + j] = g[i][j] / 2
            rows[k + j][i] = g[i][j] / 2
    return ExactMatrix(rows)


def normal_cone_quadric(n: int, pairing: ExactMatrix | None = None) -> QuadricModel:
    """Quadric cut out by the ext pairing on the 4n-4 coordinates of an
    off-diagonal ext pair.  Full rank 4n-4 means the projectivized cone is a
    cone over a smooth quadric.
    """
    if not isinstance(n, int) or n < 3:
        raise ValueError("n must be an integer >= 3")
    k = 2 * n - 2
    if pairing is None:
        pairing = ExactMatrix.identity(k)
    if pairing.rows != k or pairing.cols != k:
        raise ValueError("pairing must be %dx%d" % (k, k))
    if rank(pairing) < k:
        raise DegenerateModelError("pairing is rank deficient")
    gram = pairing_quadric_gram(pairing)
    return QuadricModel(nvars=2 * k, gram=gram, rank=rank(gram))


@dataclass(frozen=True)
class IncidenceFixedLocusReport:
    dim: int
    modulus: int
    projective_points: int
    incidence_pairs: int
    fixed_pairs: int
    diagonal_pairs: int

    @property
    def fixed_equals_diagonal(self) -> bool:
        return self.fixed_pairs == self.diagonal_pairs


def _projective_points(dim: int, p: int) -> list[tuple[int, ...]]:
    """Normalized representatives (first nonzero coordinate 1) of P^{dim-1}(F_p)."""
    pts = []
    for v in product(range(p), repeat=dim):
        lead = next((x for x in v if x != 0), 0)
        if lead == 1:
            pts.append(v)
    return pts


def fixed_locus_incidence(
    dim: int, cfg: PrimeFieldConfig = PrimeFieldConfig()
) -> IncidenceFixedLocusReport:
    """Enumerate the incidence locus {([v],[w]) : omega(v, w) = 0} over F_p
    and intersect it with the fixed locus of the swap ([v],[w]) -> ([w],[v]).

    The expected outcome, checked by the caller, is that the fixed pairs are
    exactly the diagonal ones; the diagonal always lies in the incidence
    locus because omega is alternating.
    """
    if dim % 2 != 0 or dim < 2 or dim > 6:
        raise ValueError("dim must be even with 2 <= dim <= 6")
    p = cfg.modulus
    m = dim // 2
    pts = _projective_points(dim, p)

    def omega(v, w) -> int:
        acc = 0
        for i in range(m):
            acc += v[i] * w[m + i] - v[m + i] * w[i]
        return acc % p

    incidence = fixed = diagonal = 0
    for v in pts:
        for w in pts:
            if omega(v, w) == 0:
                incidence += 1
                if v == w:
                    fixed += 1
    for v in pts:
        diagonal += 1
        if omega(v, v) != 0:
            raise AssertionError("diagonal point outside incidence locus")
    return IncidenceFixedLocusReport(
        dim=dim,
        modulus=p,
        projective_points=len(pts),
        incidence_pairs=incidence,
        fixed_pairs=fixed,
        diagonal_pairs=diagonal,
    )


class NonHomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    """Homogeneous quadratic form given by a symmetric gram matrix."""

    gram: ExactMatrix

    def __post_init__(self):
        if self.gram.rows != self.gram.cols:
            raise ValueError("gram must be square")
        if self.gram.transpose() != self.gram:
            raise ValueError("gram must be symmetric")

    @classmethod
    def from_monomials(cls, dim: int, monomials: dict) -> "QuadraticForm":
        """Build from {(i, j): coeff}; any key that is not a pair of indices
        denotes a lower-degree term and is rejected."""
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for key, c in monomials.items():
            if not (isinstance(key, tuple) and len(key) == 2):
                raise NonHomogeneousError("non-quadratic monomial key %r" % (key,))
            i, j = key
            c = Fraction(c)
            rows[i][j] += c / 2
            rows[j][i] += c / 2
        return cls(ExactMatrix(rows))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def gradient(self, x: Sequence[Fraction]) -> list[Fraction]:
        g = self.gram.const_entries()
        return [
            2 * sum(g[i][j] * x[j] for j in range(self.dim)) for i in range(self.dim)
        ]


def omega_pullback_forms(e_space: SymplecticSpace) -> list[QuadraticForm]:
    """The three components of phi -> phi^* omega as quadratic forms in the
    column-stacked entries of a hom W -> E."""
    d = e_space.dim
    omega = e_space.gram.const_entries()
    forms = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        rows = [[Fraction(0)] * (3 * d) for _ in range(3 * d)]
        for i in range(d):
            for j in range(d):
                c = omega[i][j]
                if c == 0:
                    continue
                rows[a * d + i][b * d + j] += c / 2
                rows[b * d + j][a * d + i] += c / 2
        forms.append(QuadraticForm(ExactMatrix(rows)))
    return forms


def regular_sequence_check(
    forms: Sequence[QuadraticForm], samples: int = 8, seed: int = 7
) -> bool:
    """Jacobian-rank witness that the quadrics cut out codimension len(forms).

    Samples rational points with a fixed seeded generator; returns True as
    soon as one sample has a full-rank Jacobian.  A duplicated quadric can
    never pass.
    """
    if not forms:
        raise ValueError("need at least one form")
    dim = forms[0].dim
    if any(f.dim != dim for f in forms):
        raise ValueError("forms live on different spaces")
    k = len(forms)
    if k > dim:
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dim)]
        jac = ExactMatrix([f.gradient(x) for f in forms])
        if rank(jac) == k:
            return True
    return False
