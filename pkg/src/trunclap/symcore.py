"""Exact spectral evaluation of the truncated Laplacians on symmetric matrices.

pk_minus(X, k) is the sum of the k smallest eigenvalues of X, pk_plus(X, k)
the sum of the k largest.  Both are degenerate elliptic (nondecreasing in the
Loewner order), positively 1-homogeneous, and tied by pk_plus(X, k) =
-pk_minus(-X, k).  pk_minus is also the minimum over orthonormal k-frames of
the summed quadratic forms, which is the identity the grid scheme discretizes.

The eigensolver is a cyclic Jacobi iteration.  Dimensions are small (<= 8 in
practice), so robustness on degenerate spectra matters more than asymptotics;
the batched variant applies one sweep schedule to a whole stack of matrices,
which keeps the random-matrix test suites cheap.
"""

from dataclasses import dataclass, field

import numpy as np

from . import constants
from .errors import InvalidInputError

_JACOBI_MAX_SWEEPS = 40


@dataclass(frozen=True)
class SymMatrix:
    """Dense symmetric matrix, stored as the upper triangle (row-major).

    Symmetry is structural: only n(n+1)/2 entries exist, so there is no
    symmetrization tolerance to manage downstream.
    """

    n: int
    upper: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"dimension must be >= 1, got {self.n}")
        upper = np.asarray(self.upper, dtype=float)
        expected = self.n * (self.n + 1) // 2
        if upper.shape != (expected,):
            raise InvalidInputError(
                f"upper triangle of an {self.n}x{self.n} matrix needs {expected} entries, "
                f"got shape {upper.shape}"
            )
        if not np.all(np.isfinite(upper)):
            raise InvalidInputError("matrix entries must be finite")
        object.__setattr__(self, "upper", upper)

    @classmethod
    def from_dense(cls, a):
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("matrix entries must be finite")
        if a.size and np.max(np.abs(a - a.T)) > 1e-12 * (1.0 + np.max(np.abs(a))):
            raise InvalidInputError("matrix is not symmetric")
        n = a.shape[0]
        iu = np.triu_indices(n)
        sym = 0.5 * (a + a.T)
        return cls(n, sym[iu])

    @classmethod
    def diag(cls, values):
        values = np.asarray(values, dtype=float)
        return cls.from_dense(np.diag(values))

    @classmethod
    def identity(cls, n):
        return cls.from_dense(np.eye(n))

    def dense(self):
        a = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n)
        a[iu] = self.upper
        a.T[iu] = self.upper
        return a

    def max_abs(self):
        return float(np.max(np.abs(self.upper))) if self.upper.size else 0.0

    def __add__(self, other):
        self._check_same_dim(other)
        return SymMatrix(self.n, self.upper + other.upper)

    def __sub__(self, other):
        self._check_same_dim(other)
        return SymMatrix(self.n, self.upper - other.upper)

    def __neg__(self):
        return SymMatrix(self.n, -self.upper)

    def scale(self, t):
        return SymMatrix(self.n, float(t) * self.upper)

    def _check_same_dim(self, other):
        if self.n != other.n:
            raise InvalidInputError(f"dimension mismatch: {self.n} vs {other.n}")


@dataclass(frozen=True)
class Frame:
    """k orthonormal vectors in R^n (rows of ``vectors``)."""

    n: int
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != self.n:
            raise InvalidInputError(f"expected (k, {self.n}) vectors, got shape {v.shape}")
        if v.shape[0] < 1 or v.shape[0] > self.n:
            raise InvalidInputError(f"frame size must be in [1, {self.n}], got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("frame vectors must be finite")
        gram = v @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > constants.ORTHONORMALITY_TOL:
            raise InvalidInputError("frame vectors are not orthonormal")
        object.__setattr__(self, "vectors", v)

    @property
    def k(self):
        return self.vectors.shape[0]

    @classmethod
    def axes(cls, n, k):
        return cls(n, np.eye(n)[:k])


def eig_sym_batch(mats):
    """Diagonalize a stack of symmetric matrices with cyclic Jacobi rotations.

    Parameters
    ----------
    mats : (B, n, n) array_like

    Returns
    -------
    w : (B, n) eigenvalues, ascending per matrix
    v : (B, n, n) orthogonal, columns are eigenvectors matching ``w``
    """
    a = np.array(mats, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise InvalidInputError(f"expected a (B, n, n) stack, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix entries must be finite")
    b, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    if n == 1:
        return a[:, :, 0].copy(), v

    scale = 1.0 + np.max(np.abs(a), axis=(1, 2))
    stop = 1e-14 * scale
    for _ in range(_JACOBI_MAX_SWEEPS):
        off2 = np.sum(a**2, axis=(1, 2)) - np.sum(np.diagonal(a, axis1=1, axis2=2) ** 2, axis=1)
        off = np.sqrt(np.maximum(off2, 0.0))
        if np.all(off <= stop):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                rotate = np.abs(apq) > 1e-18 * scale
                if not np.any(rotate):
                    continue
                # stable rotation angle: tan(2 theta) = 2 a_pq / (a_qq - a_pp)
                tau = np.zeros(b)
                np.divide(a[:, q, q] - a[:, p, p], 2.0 * apq, out=tau, where=rotate)
                t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau**2))
                t[tau == 0] = 1.0
                c = 1.0 / np.sqrt(1.0 + t**2)
                s = t * c
                c = np.where(rotate, c, 1.0)
                s = np.where(rotate, s, 0.0)
                cs = c[:, None]
                sn = s[:, None]
                rp = a[:, p, :].copy()
                rq = a[:, q, :].copy()
                a[:, p, :] = cs * rp - sn * rq
                a[:, q, :] = sn * rp + cs * rq
                cp = a[:, :, p].copy()
                cq = a[:, :, q].copy()
                a[:, :, p] = cs * cp - sn * cq
                a[:, :, q] = sn * cp + cs * cq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                vp = v[:, :, p].copy()
                vq = v[:, :, q].copy()
                v[:, :, p] = cs * vp - sn * vq
                v[:, :, q] = sn * vp + cs * vq

    w = np.diagonal(a, axis1=1, axis2=2).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def eig_sym(x: SymMatrix):
    """Eigen-decomposition (w ascending, v columns) of a single SymMatrix."""
    w, v = eig_sym_batch(x.dense()[None])
    return w[0], v[0]


def eigvals_sym(x: SymMatrix):
    """Sorted (ascending) eigenvalues of a symmetric matrix."""
    return eig_sym(x)[0]


def _check_k(n, k):
    if not 1 <= k <= n:
        raise InvalidInputError(f"k must satisfy 1 <= k <= {n}, got {k}")


def pk_minus_from_eigvals(w, k):
    """Sum of the k smallest entries along the last axis of ascending ``w``."""
    w = np.asarray(w)
    _check_k(w.shape[-1], k)
    return w[..., :k].sum(axis=-1)


def pk_plus_from_eigvals(w, k):
    w = np.asarray(w)
    _check_k(w.shape[-1], k)
    return w[..., w.shape[-1] - k:].sum(axis=-1)


def pk_minus(x: SymMatrix, k: int) -> float:
    """Sum of the k smallest eigenvalues of x."""
    _check_k(x.n, k)
    return float(pk_minus_from_eigvals(eigvals_sym(x), k))


def pk_plus(x: SymMatrix, k: int) -> float:
    """Sum of the k largest eigenvalues of x."""
    _check_k(x.n, k)
    return float(pk_plus_from_eigvals(eigvals_sym(x), k))


def pk_minus_frames(x: SymMatrix, k: int, frames) -> float:
    """Minimum of sum_i <X xi_i, xi_i> over the supplied orthonormal k-frames.

    Always >= pk_minus(x, k); equality holds when the eigenframe of the k
    smallest eigenvalues is among the candidates.
    """
    frames = list(frames)
    if not frames:
        raise InvalidInputError("frame list must not be empty")
    _check_k(x.n, k)
    a = x.dense()
    best = np.inf
    for fr in frames:
        if fr.n != x.n:
            raise InvalidInputError(f"frame dimension {fr.n} does not match matrix dimension {x.n}")
        if fr.k != k:
            raise InvalidInputError(f"frame has {fr.k} vectors, expected k={k}")
        val = float(np.einsum("ij,jk,ik->", fr.vectors, a, fr.vectors))
        best = min(best, val)
    return best


def eigenframe(x: SymMatrix, k: int) -> Frame:
    """Orthonormal eigenvectors of the k smallest eigenvalues (attains pk_minus)."""
    _check_k(x.n, k)
    _, v = eig_sym(x)
    return Frame(x.n, v[:, :k].T.copy())


def is_loewner_leq(x: SymMatrix, y: SymMatrix, tol=constants.LOEWNER_TOL) -> bool:
    """X <= Y in the Loewner order, up to ``tol`` on the smallest eigenvalue of Y - X."""
    return bool(eigvals_sym(y - x)[0] >= -tol)


@dataclass
class InequalityReport:
    """Outcome of the operator-algebra checks for one (X, Y, k) triple.

    ``lower_slack``/``upper_slack`` hold, per operator sign, the margins of
      pk_minus(Y) <= pk(X+Y) - pk(X) <= pk_plus(Y);
    negative slack means violation beyond tolerance.
    """

    k: int
    lower_slack: dict
    upper_slack: dict
    inequalities_ok: bool
    loewner_applicable: bool
    loewner_ok: bool
    homogeneity_worst: float
    homogeneity_ok: bool

    @property
    def all_ok(self):
        return self.inequalities_ok and self.loewner_ok and self.homogeneity_ok


def check_inequalities(x: SymMatrix, y: SymMatrix, k: int, tol=constants.IDENTITY_TOL) -> InequalityReport:
    """Check the sandwich inequality, ellipticity, and 1-homogeneity for (X, Y, k)."""
    x._check_same_dim(y)
    _check_k(x.n, k)
    pm_y = pk_minus(y, k)
    pp_y = pk_plus(y, k)
    lower, upper = {}, {}
    ok = True
    for label, lo_fn in (("minus", pk_minus), ("plus", pk_plus)):
        delta = lo_fn(x + y, k) - lo_fn(x, k)
        lower[label] = delta - pm_y
        upper[label] = pp_y - delta
        ok = ok and lower[label] >= -tol and upper[label] >= -tol

    applicable = is_loewner_leq(x, y)
    loewner_ok = True
    if applicable:
        loewner_ok = (
            pk_minus(x, k) <= pk_minus(y, k) + tol
            and pk_plus(x, k) <= pk_plus(y, k) + tol
        )

    worst = 0.0
    for t in (0.5, 2.0, 10.0):
        for fn in (pk_minus, pk_plus):
            base = fn(x, k)
            worst = max(worst, abs(fn(x.scale(t), k) - t * base) / (1.0 + abs(t * base)))
    return InequalityReport(
        k=k,
        lower_slack=lower,
        upper_slack=upper,
        inequalities_ok=ok,
        loewner_applicable=applicable,
        loewner_ok=loewner_ok,
        homogeneity_worst=worst,
        homogeneity_ok=worst <= tol,
    )


@dataclass
class SuiteReport:
    """Aggregate result of the random-matrix identity suite."""

    n_matrices: int
    max_dim: int
    checks: dict          # name -> worst violation (>= 0 means within tolerance when <= tol)
    tol: float
    passed: bool


def random_matrix_suite(n_matrices=1000, max_dim=6, seed=0, tol=constants.IDENTITY_TOL) -> SuiteReport:
    """Randomized identity suite: duality, trace reduction, sandwich inequality,
    Loewner monotonicity, positive homogeneity, frame-min consistency.

    Batched over matrices so the full 1000-matrix sweep stays in the seconds
    range.  Worst violations are reported per check; the suite passes when all
    are <= tol.
    """
    rng = np.random.default_rng(seed)
    dims = list(range(2, max_dim + 1))
    per_dim = [n_matrices // len(dims)] * len(dims)
    per_dim[-1] += n_matrices - sum(per_dim)

    worst = {
        "duality": 0.0,
        "trace": 0.0,
        "sandwich_lower": 0.0,
        "sandwich_upper": 0.0,
        "superadditivity": 0.0,
        "loewner": 0.0,
        "homogeneity": 0.0,
        "frame_min": 0.0,
    }

    for n, count in zip(dims, per_dim):
        if count == 0:
            continue
        x = rng.standard_normal((count, n, n))
        x = 0.5 * (x + np.transpose(x, (0, 2, 1)))
        y = rng.standard_normal((count, n, n))
        y = 0.5 * (y + np.transpose(y, (0, 2, 1)))
        g = rng.standard_normal((count, n, n))
        psd = np.einsum("bij,bkj->bik", g, g)

        wx, vx = eig_sym_batch(x)
        wy, _ = eig_sym_batch(y)
        wneg, _ = eig_sym_batch(-x)
        wxy, _ = eig_sym_batch(x + y)
        wxpsd, _ = eig_sym_batch(x + psd)
        wtx, _ = eig_sym_batch(2.0 * x)

        for k in range(1, n + 1):
            pmx = pk_minus_from_eigvals(wx, k)
            ppx = pk_plus_from_eigvals(wx, k)
            pmy = pk_minus_from_eigvals(wy, k)
            ppy = pk_plus_from_eigvals(wy, k)
            worst["duality"] = max(worst["duality"], float(np.max(np.abs(ppx + pk_minus_from_eigvals(wneg, k)))))
            if k == n:
                tr = np.einsum("bii->b", x)
                worst["trace"] = max(worst["trace"], float(np.max(np.abs(pmx - tr))))
            for delta in (pk_minus_from_eigvals(wxy, k) - pmx, pk_plus_from_eigvals(wxy, k) - ppx):
                worst["sandwich_lower"] = max(worst["sandwich_lower"], float(np.max(pmy - delta)))
                worst["sandwich_upper"] = max(worst["sandwich_upper"], float(np.max(delta - ppy)))
            worst["superadditivity"] = max(
                worst["superadditivity"],
                float(np.max(pmx + pmy - pk_minus_from_eigvals(wxy, k))),
            )
            worst["loewner"] = max(
                worst["loewner"],
                float(np.max(pmx - pk_minus_from_eigvals(wxpsd, k))),
            )
            worst["homogeneity"] = max(
                worst["homogeneity"],
                float(np.max(np.abs(pk_minus_from_eigvals(wtx, k) - 2.0 * pmx))),
            )

        # frame-min equals pk_minus when the eigenframe is offered (k=1 here)
        quad = np.einsum("bi,bij,bj->b", vx[:, :, 0], x, vx[:, :, 0])
        worst["frame_min"] = max(worst["frame_min"], float(np.max(np.abs(quad - wx[:, 0]))))

    passed = all(v <= tol for v in worst.values())
    return SuiteReport(n_matrices=n_matrices, max_dim=max_dim, checks=worst, tol=tol, passed=passed)
