"""Built-in symmetric space catalog.

Each space is constructed from an explicit matrix model: the basis matrices
are written down, closure under commutators is certified by the exact span
solver (which doubles as the structure constant extractor), and the abstract
bracket table is what the rest of the package consumes.  The matrices are
retained as a MatrixRealization so validation can cross-check the table
against honest matrix commutators.

Supported families: su(n,1), so(n,1), sl(n,R).  The quaternionic and Cayley
hyperbolic spaces are intentionally absent; asking for them is a config
error, not a numerical failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError
from .exactla import F0, F1, Qi, SpanSolver, qmat_comm, qmat_realify
from .liealg import MODE_EXACT, AlgebraVector, MatrixRealization, StructuredLieAlgebra
from .subspaces import Subspace

SPACE_IDS = ("su21", "su31", "so21", "so31", "sl2r", "sl3r")

_FAMILY_NAMES = {
    "su": "complex hyperbolic isometries su(n,1)",
    "so": "real hyperbolic isometries so(n,1)",
    "sl": "special linear sl(n,R)",
}


def parse_space_id(space_id: str):
    """Split an id like su21 / so31 / sl3r into (family, n)."""
    s = space_id.strip().lower()
    if s.startswith("sp") or s in ("f4", "f4-20", "oh2"):
        raise ConfigError(
            "space %r is quaternionic/octonionic and is not supported" % space_id)
    for fam in ("su", "so", "sl"):
        if s.startswith(fam):
            tail = s[len(fam):]
            if fam == "sl":
                if not (tail.endswith("r") and tail[:-1].isdigit()):
                    break
                n = int(tail[:-1])
                if n < 2:
                    break
                return fam, n
            if not (len(tail) == 2 and tail.isdigit() and tail[1] == "1"):
                break
            n = int(tail[0])
            if n < 1:
                break
            return fam, n
    raise ConfigError("unrecognized space id %r (try one of %s)"
                      % (space_id, ", ".join(SPACE_IDS)))


def _e(n: int, i: int, j: int, val=1):
    m = [[Qi(0)] * n for _ in range(n)]
    m[i][j] = val if isinstance(val, Qi) else Qi(val)
    return tuple(tuple(row) for row in m)


def _madd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _su_basis(n: int):
    """k first (F_jk, iS_jk, D_j), then p (P_j, Q_j); size n+1 matrices."""
    size = n + 1
    labels, mats = [], []
    i1 = Qi(0, 1)
    for j in range(n):
        for k in range(j + 1, n):
            labels.append("F%d%d" % (j + 1, k + 1))
            mats.append(_madd(_e(size, j, k), _e(size, k, j, -1)))
    for j in range(n):
        for k in range(j + 1, n):
            labels.append("iS%d%d" % (j + 1, k + 1))
            mats.append(_madd(_e(size, j, k, i1), _e(size, k, j, i1)))
    for j in range(n):
        labels.append("D%d" % (j + 1))
        mats.append(_madd(_e(size, j, j, i1), _e(size, n, n, Qi(0, -1))))
    k_dim = len(labels)
    for j in range(n):
        labels.append("P%d" % (j + 1))
        mats.append(_madd(_e(size, j, n), _e(size, n, j)))
    for j in range(n):
        labels.append("Q%d" % (j + 1))
        mats.append(_madd(_e(size, j, n, i1), _e(size, n, j, Qi(0, -1))))
    return labels, mats, k_dim, tuple([1] * n + [-1])


def _so_basis(n: int):
    size = n + 1
    labels, mats = [], []
    for j in range(n):
        for k in range(j + 1, n):
            labels.append("A%d%d" % (j + 1, k + 1))
            mats.append(_madd(_e(size, j, k), _e(size, k, j, -1)))
    k_dim = len(labels)
    for j in range(n):
        labels.append("P%d" % (j + 1))
        mats.append(_madd(_e(size, j, n), _e(size, n, j)))
    return labels, mats, k_dim, tuple([1] * n + [-1])


def _sl_basis(n: int):
    labels, mats = [], []
    for j in range(n):
        for k in range(j + 1, n):
            labels.append("A%d%d" % (j + 1, k + 1))
            mats.append(_madd(_e(n, j, k), _e(n, k, j, -1)))
    k_dim = len(labels)
    for i in range(n - 1):
        labels.append("H%d" % (i + 1))
        mats.append(_madd(_e(n, i, i), _e(n, i + 1, i + 1, -1)))
    for j in range(n):
        for k in range(j + 1, n):
            labels.append("S%d%d" % (j + 1, k + 1))
            mats.append(_madd(_e(n, j, k), _e(n, k, j)))
    return labels, mats, k_dim, None


@lru_cache(maxsize=None)
def build_space(space_id: str) -> StructuredLieAlgebra:
    """Construct the named algebra with exact structure constants.

    The span solver run here proves the listed matrices are independent and
    close under commutators; any failure is a programming error in the basis
    tables, so it raises immediately.
    """
    fam, n = parse_space_id(space_id)
    if fam == "su":
        labels, mats, k_dim, signature = _su_basis(n)
    elif fam == "so":
        labels, mats, k_dim, signature = _so_basis(n)
    else:
        labels, mats, k_dim, signature = _sl_basis(n)
    size = len(mats[0])
    solver = SpanSolver([qmat_realify(m) for m in mats])
    if not solver.independent:
        raise RuntimeError("basis table for %s is dependent" % space_id)
    d = len(mats)
    brackets = {}
    for i in range(d):
        for j in range(i + 1, d):
            comm = qmat_comm(mats[i], mats[j])
            coords = solver.coordinates(qmat_realify(comm))
            entry = {k: c for k, c in enumerate(coords) if c != 0}
            if entry:
                brackets[(i, j)] = entry
    theta = tuple(tuple((F1 if i == j else F0) if j < k_dim else
                        (Fraction(-1) if i == j else F0)
                        for j in range(d)) for i in range(d))
    real = MatrixRealization(size=size, images=tuple(mats),
                             signature=signature, unimodular=True)
    return StructuredLieAlgebra(labels=tuple(labels), brackets=brackets,
                                theta=theta, realization=real,
                                name=space_id.strip().lower())


def complex_structure_matrix(a: StructuredLieAlgebra):
    """Exact ad(zeta) for su(n,1): zeta = (sum_j D_j)/(n+1) spans the center
    of k and squares to -1 on p.  Errors for non-Hermitian spaces."""
    fam, n = parse_space_id(a.name)
    if fam != "su":
        raise ConfigError("space %s has no invariant complex structure" % a.name)
    zeta = a.zero()
    scale = Fraction(1, n + 1)
    for j in range(n):
        zeta = zeta + a.from_labels({"D%d" % (j + 1): scale})
    return a.ad_matrix(zeta)


@dataclass(frozen=True)
class CatalogEntry:
    """A named (space, subspace, section direction) test example."""

    space_id: str
    pair_name: str
    algebra: StructuredLieAlgebra
    s: Subspace
    normal_frame: tuple          # AlgebraVectors spanning the normal space in p
    x_default: AlgebraVector
    x_grid: tuple                # 5 exact X choices in the normal space
    totally_real: bool | None    # None when the space is not Hermitian
    description: str = ""

    def as_dict(self) -> dict:
        return {
            "space": self.space_id,
            "pair": self.pair_name,
            "s_dim": self.s.dim,
            "s_basis": [self.algebra.format_vector(v) for v in self.s.basis],
            "codim_in_p": len(self.algebra.p_basis) - self.s.dim,
            "normal_frame": [self.algebra.format_vector(v) for v in self.normal_frame],
            "x_default": self.algebra.format_vector(self.x_default),
            "totally_real": self.totally_real,
            "description": self.description,
        }


_PAIR_TABLE = {
    "su21": ("real-form", "complex-hyperplane"),
    "su31": ("real-form", "complex-hyperplane"),
    "so31": ("geodesic-plane",),
}


def list_pairs() -> dict:
    """space id -> pair names, for the catalog listing."""
    return {k: tuple(v) for k, v in _PAIR_TABLE.items()}


def _x_grid(frame):
    if len(frame) == 1:
        v = frame[0]
        return (v, v.scale(2), v.scale(3), v.scale(-1), v.scale(-2))
    v1, v2 = frame[0], frame[1]
    return (v1, v2, v1 + v2, v1 + v2.scale(-1), v1.scale(2) + v2.scale(3))


def build_pair(space_id: str, pair_name: str) -> CatalogEntry:
    """Construct a named reflective pair; the reflectivity certificate runs
    at build time so a bad table cannot escape into downstream checks."""
    sid = space_id.strip().lower()
    parse_space_id(sid)  # surfaces the unsupported-family message first
    pairs = _PAIR_TABLE.get(sid)
    if pairs is None:
        raise ConfigError("space %r has no catalog pairs (known: %s)"
                          % (space_id, ", ".join(sorted(_PAIR_TABLE))))
    if pair_name not in pairs:
        raise ConfigError("space %s has pairs %s, not %r"
                          % (sid, ", ".join(pairs), pair_name))
    a = build_space(sid)
    fam, n = parse_space_id(sid)
    if pair_name == "real-form":
        basis = [a.from_labels({"P%d" % (j + 1): 1}) for j in range(n)]
        frame = tuple(a.from_labels({"Q%d" % (j + 1): 1}) for j in range(n))
        totreal = True
        desc = "real hyperbolic n-space inside complex hyperbolic n-space"
    elif pair_name == "complex-hyperplane":
        basis = []
        for j in range(n - 1):
            basis.append(a.from_labels({"P%d" % (j + 1): 1}))
            basis.append(a.from_labels({"Q%d" % (j + 1): 1}))
        frame = (a.from_labels({"P%d" % n: 1}), a.from_labels({"Q%d" % n: 1}))
        totreal = False
        desc = "complex hyperbolic hyperplane (one complex dimension down)"
    else:  # geodesic-plane, so(n,1)
        basis = [a.from_labels({"P%d" % (j + 1): 1}) for j in range(n - 1)]
        frame = (a.from_labels({"P%d" % n: 1}),)
        totreal = None
        desc = "totally geodesic hyperplane in real hyperbolic space (codim 1)"
    s = Subspace(a, basis, MODE_EXACT)
    ok, report = s.is_reflective()
    if not ok:
        raise RuntimeError("catalog pair %s/%s failed its reflectivity "
                           "certificate: %s" % (sid, pair_name, report))
    if totreal is not None:
        jm = complex_structure_matrix(a)
        if s.is_totally_real(jm) != totreal:
            raise RuntimeError("catalog pair %s/%s has the wrong totally-real "
                               "flag" % (sid, pair_name))
    grid = _x_grid(list(frame))
    return CatalogEntry(space_id=sid, pair_name=pair_name, algebra=a, s=s,
                        normal_frame=tuple(frame), x_default=grid[0],
                        x_grid=grid, totally_real=totreal, description=desc)


def bisector_equidistance_check(entry: CatalogEntry, r: float = 0.5,
                                grid=None, tol: float = 1e-8) -> dict:
    """Distance comparison of the extended hypersurface against the two
    points z_pm = exp(+-r J X_hat) o.

    For the complex-hyperplane pair the extension is exactly the bisector of
    z_pm: the projection to the complex spine span(X, JX) collapses the
    hypersurface onto the real spine geodesic exp(tX) o, which is the
    perpendicular bisector of the segment [z_-, z_+] inside the spine.  The
    endpoints must sit J-across the geodesic; putting them on the geodesic
    itself (exp(+-rX) o) is refuted by any q = exp(tX) o with t != 0.

    For the real-form pair J X_hat lies inside s, so z_pm land on S and the
    same construction fails by a margin on the order of 2r: that run is the
    negative control distinguishing the two congruence classes.
    """
    import numpy as np
    from scipy.linalg import expm

    from .geometry import (GridSpec, ImmersionSpec, SpacePoint, distance,
                           immersion_point, realize)

    a = entry.algebra
    fam, _ = parse_space_id(a.name)
    if fam != "su":
        raise ConfigError("bisector check needs a complex hyperbolic space")
    if grid is None:
        grid = GridSpec(t_steps=7, y_steps=7)
    jm = complex_structure_matrix(a)
    x = entry.x_default.astype("float64")
    xn = float(np.sqrt(float(a.killing_form(x, x))))
    x_unit = x.scale(1.0 / xn)
    jx = np.array([[float(c) for c in row] for row in jm]) @ x_unit.to_array()
    jx_vec = a.vector(tuple(jx), "float64")
    spec = ImmersionSpec(a, entry.s, x_unit, grid=grid)
    z_plus = SpacePoint.from_matrix(a, expm(float(r) * realize(a, jx_vec)))
    z_minus = SpacePoint.from_matrix(a, expm(-float(r) * realize(a, jx_vec)))

    base = SpacePoint.base(a)
    base_gap = abs(distance(a, base, z_plus) - distance(a, base, z_minus))
    max_delta = 0.0
    witness = None
    ys = np.meshgrid(*([grid.y_axis()] * entry.s.dim), indexing="ij")
    y_nodes = np.stack([m.ravel() for m in ys], axis=-1)
    for t in grid.t_axis():
        for y in y_nodes:
            q = immersion_point(spec, float(t), y)
            delta = abs(distance(a, q, z_plus) - distance(a, q, z_minus))
            if delta > max_delta:
                max_delta = delta
                witness = {"t": float(t), "y": [float(c) for c in y]}
    return {
        "mode": "float64",
        "space": entry.space_id,
        "pair": entry.pair_name,
        "r": float(r),
        "x_norm": xn,
        "tolerance": tol,
        "base_point_gap": base_gap,
        "max_delta": max_delta,
        "witness": witness,
        "equidistant": max_delta <= tol,
        "samples": int(len(grid.t_axis()) * y_nodes.shape[0]),
    }


def negative_control():
    """A (subspace, X) pair in sl(3,R) that genuinely violates the extension
    condition at the first odd bracket: s = span(S12), X = H1 + S13 gives
    [X,[S12,X]] with an S23 component, which is neither in s nor zero.

    Kept out of build_pair on purpose: the pair is not reflective and exists
    to prove the detectors can say no.
    """
    a = build_space("sl3r")
    s = Subspace(a, [a.from_labels({"S12": 1})], MODE_EXACT)
    x = a.from_labels({"H1": 1, "S13": 1})
    return a, s, x
