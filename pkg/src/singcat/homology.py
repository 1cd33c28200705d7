"""Projective resolutions, syzygies, ext spaces, and projectively stable hom.

The single-step data (cover, augmentation, kernel, inclusion) is cached on
each module instance, so iterated syzygies, morphism lifts, and orbit walks
all see the same representative objects.  Ext is computed in generator
coordinates: a map out of a cover is determined by the images of the summand
generators, which keeps every dual differential a small dense matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import Matrix, kernel_basis, rank, rref, solve_left
from .rep import (
    Cover,
    RepMorphism,
    Representation,
    _same_algebra,
    hom,
    kernel,
    projective_cover,
)


def _step(M: Representation):
    """Cached (cover, eps, syzygy, inclusion) for one resolution step."""
    data = getattr(M, "_syzygy_step", None)
    if data is None:
        cover, eps = projective_cover(M)
        K, inc = kernel(eps)
        data = (cover, eps, K, inc)
        M._syzygy_step = data
    return data


class ProjectiveResolution:
    """A view of the cached single-step chain, walked out to a given length."""

    def __init__(self, M: Representation, length: int):
        self.module = M
        self.covers: list[Cover] = []
        self.eps: list[RepMorphism] = []
        self.kernels: list[Representation] = [M]
        self.incs: list[RepMorphism] = []
        cur = M
        for _ in range(length + 1):
            cover, eps, K, inc = _step(cur)
            self.covers.append(cover)
            self.eps.append(eps)
            self.incs.append(inc)
            self.kernels.append(K)
            cur = K

    def term(self, i: int) -> Representation:
        return self.covers[i].rep

    def diff(self, i: int) -> RepMorphism:
        """d_i: P_i -> P_{i-1}, for 1 <= i <= length."""
        return self.eps[i].compose(self.incs[i - 1])


def resolve(M: Representation, length: int) -> ProjectiveResolution:
    return ProjectiveResolution(M, length)


def syzygy(M: Representation, steps: int = 1) -> Representation:
    if steps < 0:
        raise ValueError("negative syzygy count")
    cur = M
    for _ in range(steps):
        cur = _step(cur)[2]
    return cur


def _cover_map_from_gen_images(cover: Cover, T: Representation,
                               xs: list[Matrix]) -> RepMorphism:
    """The morphism cover.rep -> T sending the j-th generator to row xs[j]."""
    alg = cover.algebra
    f = alg.field
    rows_at: dict[str, list] = {w: [] for w in alg.quiver.vertices}
    for j, v in enumerate(cover.vertices):
        for key in alg.paths_from(v):
            w = alg.key_target(key)
            rows_at[w].append(xs[j].mul(T.path_matrix(v, key[1])).entries[0])
    mats = {w: Matrix.from_rows(f, [list(r) for r in rows_at[w]], T.dims[w])
            for w in alg.quiver.vertices}
    return RepMorphism(cover.rep, T, mats, check=False)


def syzygy_morphism(f: RepMorphism, steps: int = 1) -> RepMorphism:
    """The induced map on syzygies, relative to the cached covers."""
    cur = f
    for _ in range(steps):
        cur = _omega1(cur)
    return cur


def _omega1(f: RepMorphism) -> RepMorphism:
    M, N = f.src, f.tgt
    coverM, epsM, KM, incM = _step(M)
    coverN, epsN, KN, incN = _step(N)
    fld = M.algebra.field
    comp = epsM.compose(f)
    xs = []
    for j in range(len(coverM.vertices)):
        v, row = coverM.gen_row(j)
        y = Matrix.from_rows(fld, [list(comp.mats[v].entries[row])], N.dims[v])
        x = solve_left(epsN.mats[v], y)
        assert x is not None, "augmentation is not onto"
        xs.append(x)
    lam = _cover_map_from_gen_images(coverM, coverN.rep, xs)
    mats = {}
    for v in M.algebra.quiver.vertices:
        rhs = incM.mats[v].mul(lam.mats[v])
        sol = solve_left(incN.mats[v], rhs)
        assert sol is not None, "lift does not preserve the kernel"
        mats[v] = sol
    return RepMorphism(KM, KN, mats, check=False)


def _hom_from_cover_dim(cover: Cover, N: Representation) -> int:
    return sum(N.dims[v] for v in cover.vertices)


def _dual_map_matrix(cover_lo: Cover, cover_hi: Cover, d: RepMorphism,
                     N: Representation) -> Matrix:
    """Matrix of precomposition Hom(cover_lo.rep, N) -> Hom(cover_hi.rep, N).

    Both hom spaces are written in generator coordinates, rows acting on the
    right as everywhere else.
    """
    alg = cover_lo.algebra
    f = alg.field
    row_off = []
    r = 0
    for v in cover_lo.vertices:
        row_off.append(r)
        r += N.dims[v]
    col_off = []
    c = 0
    for w in cover_hi.vertices:
        col_off.append(c)
        c += N.dims[w]
    out = [[f.zero] * c for _ in range(r)]
    for j, w in enumerate(cover_hi.vertices):
        wv, grow = cover_hi.gen_row(j)
        img = d.mats[wv].entries[grow] if d.mats[wv].rows else ()
        for k, v in enumerate(cover_lo.vertices):
            group = alg.basis(v, wv)
            base = cover_lo.offset(k, wv)
            block = None
            for idx, key in enumerate(group):
                coef = img[base + idx]
                if coef:
                    m = N.path_matrix(v, key[1]).scale(coef)
                    block = m if block is None else block.add(m)
            if block is not None:
                for a in range(N.dims[v]):
                    for b in range(N.dims[w]):
                        if block.entries[a][b]:
                            out[row_off[k] + a][col_off[j] + b] = f.add(
                                out[row_off[k] + a][col_off[j] + b],
                                block.entries[a][b])
    return Matrix.from_rows(f, out, c)


class ExtSpace:
    """dim of Ext^i(M, N) plus spanning cocycles as maps P_i -> N."""

    def __init__(self, dim: int, cocycles: list[RepMorphism]):
        self.dim = dim
        self.cocycles = cocycles


def ext(M: Representation, N: Representation, i: int) -> ExtSpace:
    _same_algebra(M, N)
    if i < 0:
        raise ValueError("negative ext degree")
    if i == 0:
        h = hom(M, N)
        return ExtSpace(h.dim, list(h.basis))
    res = resolve(M, i + 1)
    d_lo = _dual_map_matrix(res.covers[i - 1], res.covers[i], res.diff(i), N)
    d_hi = _dual_map_matrix(res.covers[i], res.covers[i + 1], res.diff(i + 1), N)
    total = _hom_from_cover_dim(res.covers[i], N)
    dim = total - rank(d_lo) - rank(d_hi)
    fld = M.algebra.field
    cocycles = []
    for vec in kernel_basis(d_hi):
        xs = []
        pos = 0
        for v in res.covers[i].vertices:
            xs.append(Matrix.from_rows(fld, [list(vec[pos:pos + N.dims[v]])],
                                       N.dims[v]))
            pos += N.dims[v]
        cocycles.append(_cover_map_from_gen_images(res.covers[i], N, xs))
    return ExtSpace(dim, cocycles)


class StableHomSpace:
    """Hom(M, N) modulo maps factoring through a projective.

    A map factors through some projective iff it factors through the cover
    of N, so the projective subspace is the image of composition with the
    cover's augmentation.  Quotient coordinates are read off the non-pivot
    positions of that subspace's row echelon form.
    """

    def __init__(self, M: Representation, N: Representation):
        alg = _same_algebra(M, N)
        fld = alg.field
        self.hom = hom(M, N)
        coverN, epsN, _, _ = _step(N)
        hp = hom(M, coverN.rep)
        rows = [list(self.hom.coords(b.compose(epsN))) for b in hp.basis]
        red, piv = rref(Matrix.from_rows(fld, rows, self.hom.dim))
        self._field = fld
        self._red = red
        self._piv = list(piv)
        pivset = set(piv)
        self._nonpiv = [j for j in range(self.hom.dim) if j not in pivset]

    @property
    def dim(self) -> int:
        return len(self._nonpiv)

    def coords_mod(self, f: RepMorphism) -> tuple:
        fld = self._field
        c = list(self.hom.coords(f))
        for row, p in zip(self._red.entries, self._piv):
            factor = c[p]
            if factor:
                c = [fld.sub(ci, fld.mul(factor, rj)) for ci, rj in zip(c, row)]
        assert all(not c[p] for p in self._piv)
        return tuple(c[q] for q in self._nonpiv)

    def class_rep(self, qcoords) -> RepMorphism:
        coeffs = [self._field.zero] * self.hom.dim
        for q, val in zip(self._nonpiv, qcoords):
            coeffs[q] = val
        return self.hom.element(coeffs)

    def basis_classes(self) -> list[RepMorphism]:
        return [self.hom.basis[q] for q in self._nonpiv]

    def is_stably_zero(self, f: RepMorphism) -> bool:
        return all(not x for x in self.coords_mod(f))


def stable_hom(M: Representation, N: Representation) -> StableHomSpace:
    return StableHomSpace(M, N)


def stable_end_dim(M: Representation) -> int:
    cached = getattr(M, "_st_end_dim", None)
    if cached is None:
        cached = stable_hom(M, M).dim
        M._st_end_dim = cached
    return cached


def is_stably_zero_module(M: Representation) -> bool:
    """Zero or projective; minimal covers make this a dimension comparison."""
    if M.total_dim == 0:
        return True
    cover, _, _, _ = _step(M)
    return cover.rep.total_dim == M.total_dim


def _likely_stable_iso(A: Representation, B: Representation) -> bool:
    if stable_end_dim(A) != stable_end_dim(B):
        return False
    return stable_hom(A, B).dim > 0 and stable_hom(B, A).dim > 0


def _matches_stably(A: Representation, B: Representation) -> bool:
    from .rep import stable_iso
    return _likely_stable_iso(A, B) and stable_iso(A, B)


@dataclass
class PdCertificate:
    status: str  # "finite" | "infinite_periodic" | "undetermined"
    n: int | None = None
    preperiod: int | None = None
    period: int | None = None
    horizon: int | None = None

    @staticmethod
    def finite(n: int) -> "PdCertificate":
        return PdCertificate("finite", n=n)

    @staticmethod
    def infinite_periodic(preperiod: int, period: int) -> "PdCertificate":
        return PdCertificate("infinite_periodic", preperiod=preperiod,
                             period=period)

    @staticmethod
    def undetermined(horizon: int) -> "PdCertificate":
        return PdCertificate("undetermined", horizon=horizon)


def pd_certificate(M: Representation, horizon: int = 24) -> PdCertificate:
    """Projective dimension, certified finite or periodically infinite.

    Periodicity of the stable syzygy orbit certifies infinite projective
    dimension because a later syzygy revisits a nonvanishing stable class.
    """
    seen: list[tuple[int, Representation]] = []
    if M.total_dim and not is_stably_zero_module(M):
        seen.append((0, M))
    cur = M
    for i in range(1, horizon + 1):
        cur = _step(cur)[2]
        if cur.total_dim == 0:
            return PdCertificate.finite(i - 1)
        if is_stably_zero_module(cur):
            return PdCertificate.finite(i)
        for j, old in seen:
            if _matches_stably(old, cur):
                return PdCertificate.infinite_periodic(j, i - j)
        seen.append((i, cur))
    return PdCertificate.undetermined(horizon)


def omega_stabilizes(M: Representation, horizon: int = 24,
                     step: int = 1) -> dict:
    """Walk the syzygy orbit in strides of ``step`` until it resolves.

    Returns {"kind": "zero", "steps": s} when some syzygy vanishes stably,
    {"kind": "cycle", "preperiod": p, "period": L, "reps": [...]} when the
    stable orbit closes up (indices in strides), or {"kind": "undetermined"}.
    The representative list holds the stride-indexed syzygy instances.
    """
    if step < 1:
        raise ValueError("stride must be positive")
    reps = [M]
    if is_stably_zero_module(M):
        return {"kind": "zero", "steps": 0, "reps": reps}
    cur = M
    taken = 0
    while taken + step <= horizon:
        for _ in range(step):
            cur = _step(cur)[2]
            taken += 1
            if cur.total_dim == 0:
                return {"kind": "zero", "steps": taken, "reps": reps}
        if is_stably_zero_module(cur):
            return {"kind": "zero", "steps": taken, "reps": reps}
        for t, old in enumerate(reps):
            if _matches_stably(old, cur):
                return {"kind": "cycle", "preperiod": t,
                        "period": len(reps) - t, "reps": reps}
        reps.append(cur)
    return {"kind": "undetermined", "horizon": horizon, "reps": reps}
