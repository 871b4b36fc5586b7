"""First-order terms H(x, xi) and their structure checks.

Shipped kinds are the gradient-norm couplings b(x)|xi| (either sign) and the
drift b(x).xi, with coefficients drawn from a small expression catalog
(constant / affine / trig) so that bounds stay auditable.  The structure
conditions validated here are sublinearity |H| <= b_bound |xi|, positive
1-homogeneity in xi, and a Lipschitz-in-x bound |H(x,xi)-H(y,xi)| <= C|x-y||xi|
with C estimated by sampling.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InvalidInputError

KINDS = ("zero", "norm", "neg_norm", "drift")


@dataclass(frozen=True)
class Coefficient:
    """Scalar coefficient function of x from a fixed catalog.

    constant: value
    affine:   value + linear . x
    trig:     value + amp * sin(freq * x[axis])
    """

    kind: str = "constant"
    value: float = 0.0
    linear: tuple = ()
    amp: float = 0.0
    freq: float = 1.0
    axis: int = 0

    def __post_init__(self):
        if self.kind not in ("constant", "affine", "trig"):
            raise ConfigError(f"unknown coefficient kind {self.kind!r}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "constant":
            return np.broadcast_to(np.float64(self.value), x.shape[:-1]).copy()
        if self.kind == "affine":
            lin = np.asarray(self.linear, dtype=float)
            return self.value + x[..., : lin.size] @ lin
        return self.value + self.amp * np.sin(self.freq * x[..., self.axis])

    def lipschitz_bound(self):
        if self.kind == "constant":
            return 0.0
        if self.kind == "affine":
            return float(np.linalg.norm(np.asarray(self.linear, dtype=float)))
        return abs(self.amp * self.freq)


def coefficient_from_config(cfg) -> Coefficient:
    if isinstance(cfg, (int, float)):
        return Coefficient("constant", value=float(cfg))
    if not isinstance(cfg, dict):
        raise ConfigError(f"coefficient must be a number or an object, got {type(cfg).__name__}")
    kind = cfg.get("kind", "constant")
    allowed = {
        "constant": {"kind", "value"},
        "affine": {"kind", "value", "linear"},
        "trig": {"kind", "value", "amp", "freq", "axis"},
    }
    if kind not in allowed:
        raise ConfigError(f"unknown coefficient kind {kind!r}")
    unknown = set(cfg) - allowed[kind]
    if unknown:
        raise ConfigError(f"unknown coefficient keys {sorted(unknown)}")
    kwargs = {k: v for k, v in cfg.items() if k != "kind"}
    if "linear" in kwargs:
        kwargs["linear"] = tuple(float(v) for v in kwargs["linear"])
    return Coefficient(kind, **kwargs)


@dataclass(frozen=True)
class HamiltonianSpec:
    """H(x, xi): zero, b(x)|xi|, -b(x)|xi|, or b(x) . xi.

    ``b_bound`` is the declared constant of the sublinearity condition
    |H(x, xi)| <= b_bound |xi|; validate_structure checks it by sampling.
    """

    kind: str = "zero"
    b: Coefficient = field(default_factory=Coefficient)
    b_vec: tuple = ()
    b_bound: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown hamiltonian kind {self.kind!r}")
        if self.kind == "drift" and not self.b_vec:
            raise InvalidInputError("drift hamiltonian needs component coefficients")
        if self.b_bound < 0:
            raise InvalidInputError("b_bound must be >= 0")

    @classmethod
    def zero(cls):
        return cls("zero", b_bound=0.0)

    @classmethod
    def norm(cls, b, b_bound=None):
        b = b if isinstance(b, Coefficient) else Coefficient("constant", value=float(b))
        if b_bound is None:
            if b.kind != "constant":
                raise InvalidInputError("b_bound must be given for non-constant b")
            b_bound = abs(b.value)
        return cls("norm", b=b, b_bound=float(b_bound))

    @classmethod
    def neg_norm(cls, b, b_bound=None):
        spec = cls.norm(b, b_bound)
        return cls("neg_norm", b=spec.b, b_bound=spec.b_bound)

    @classmethod
    def drift(cls, components, b_bound=None):
        comps = tuple(
            c if isinstance(c, Coefficient) else Coefficient("constant", value=float(c))
            for c in components
        )
        if b_bound is None:
            if any(c.kind != "constant" for c in comps):
                raise InvalidInputError("b_bound must be given for non-constant drift")
            b_bound = float(np.linalg.norm([c.value for c in comps]))
        return cls("drift", b_vec=comps, b_bound=float(b_bound))

    def is_zero(self):
        return self.kind == "zero"


def eval_h(spec: HamiltonianSpec, x, xi):
    """Evaluate H(x, xi); broadcasts over leading axes of x and xi."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if spec.kind == "zero":
        return np.zeros(np.broadcast_shapes(x.shape[:-1], xi.shape[:-1]))
    if spec.kind == "norm":
        return spec.b(x) * np.linalg.norm(xi, axis=-1)
    if spec.kind == "neg_norm":
        return -spec.b(x) * np.linalg.norm(xi, axis=-1)
    bx = np.stack([c(x) for c in spec.b_vec], axis=-1)
    return np.sum(bx * xi, axis=-1)


def hamiltonian_from_config(cfg) -> HamiltonianSpec:
    if not isinstance(cfg, dict):
        raise ConfigError("hamiltonian must be an object")
    kind = cfg.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"hamiltonian kind must be one of {KINDS}, got {kind!r}")
    if kind == "zero":
        unknown = set(cfg) - {"kind"}
        if unknown:
            raise ConfigError(f"unknown hamiltonian keys {sorted(unknown)}")
        return HamiltonianSpec.zero()
    if kind in ("norm", "neg_norm"):
        unknown = set(cfg) - {"kind", "b", "b_bound"}
        if unknown:
            raise ConfigError(f"unknown hamiltonian keys {sorted(unknown)}")
        b = coefficient_from_config(cfg.get("b", 0.0))
        ctor = HamiltonianSpec.norm if kind == "norm" else HamiltonianSpec.neg_norm
        return ctor(b, cfg.get("b_bound"))
    unknown = set(cfg) - {"kind", "b", "b_bound"}
    if unknown:
        raise ConfigError(f"unknown hamiltonian keys {sorted(unknown)}")
    comps = [coefficient_from_config(c) for c in cfg.get("b", [])]
    return HamiltonianSpec.drift(comps, cfg.get("b_bound"))


@dataclass
class ConditionResult:
    name: str
    passed: bool
    worst_slack: float
    worst_sample: tuple | None
    constant: float | None = None


@dataclass
class StructureReport:
    sublinear: ConditionResult
    homogeneous: ConditionResult
    lipschitz_x: ConditionResult

    @property
    def all_ok(self):
        return self.sublinear.passed and self.homogeneous.passed and self.lipschitz_x.passed


def validate_structure(spec: HamiltonianSpec, domain, samples=400, seed=0) -> StructureReport:
    """Sample-based check of the three structure conditions on a domain.

    Points are drawn from the domain's bounding box (the conditions are
    pointwise, so interior membership is not required); directions xi are
    uniform on the sphere with a spread of magnitudes.
    """
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    lo, hi = domain.bounding_box()
    d = domain.dim
    xs = lo + (hi - lo) * rng.random((samples, d))
    ys = lo + (hi - lo) * rng.random((samples, d))
    xi = rng.standard_normal((samples, d))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    mags = rng.uniform(0.1, 10.0, samples)
    xi_scaled = xi * mags[:, None]

    h = eval_h(spec, xs, xi_scaled)
    slack = np.abs(h) - spec.b_bound * mags
    i = int(np.argmax(slack))
    sublinear = ConditionResult(
        name="sublinear_bound",
        passed=bool(slack[i] <= 1e-10 * (1.0 + spec.b_bound)),
        worst_slack=float(slack[i]),
        worst_sample=(tuple(xs[i]), tuple(xi_scaled[i])),
    )

    worst_h = -np.inf
    worst_pt = None
    base = eval_h(spec, xs, xi)
    for t in (0.5, 2.0, 10.0):
        dev = np.abs(eval_h(spec, xs, t * xi) - t * base)
        j = int(np.argmax(dev))
        if dev[j] > worst_h:
            worst_h = float(dev[j])
            worst_pt = (tuple(xs[j]), tuple(xi[j]), t)
    homogeneous = ConditionResult(
        name="positive_homogeneity",
        passed=bool(worst_h <= 1e-10 * (1.0 + spec.b_bound)),
        worst_slack=worst_h,
        worst_sample=worst_pt,
    )

    diff = np.abs(eval_h(spec, xs, xi) - eval_h(spec, ys, xi))
    dist = np.linalg.norm(xs - ys, axis=1)
    good = dist > 1e-12
    quot = np.zeros(samples)
    quot[good] = diff[good] / dist[good]
    j = int(np.argmax(quot))
    c_est = float(quot[j])
    lipschitz = ConditionResult(
        name="lipschitz_in_x",
        passed=bool(np.isfinite(c_est)),
        worst_slack=c_est,
        worst_sample=(tuple(xs[j]), tuple(ys[j]), tuple(xi[j])),
        constant=c_est,
    )
    return StructureReport(sublinear=sublinear, homogeneous=homogeneous, lipschitz_x=lipschitz)
