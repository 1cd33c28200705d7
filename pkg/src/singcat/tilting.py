"""Subcategory specifications, approximations, and cluster-tilting checks.

A subcategory is described by a finite list of generator modules together
with a degree d.  Approximations are the universal ones: the source of a
right approximation of N is the sum of one generator copy per hom-basis
element, so factoring properties hold by construction and minimality is
never assumed.  Verification comes in two modes.  Certificate mode checks
rigidity, generation, cogeneration, and closure of d-th syzygies, which is
everything that can be decided from the generator list alone.  Full mode
additionally needs a caller-supplied complete list of indecomposables and
checks both Ext-orthogonality equalities against it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import rank
from .quiver_algebra import BoundQuiverAlgebra
from .rep import (
    AlgebraMismatch,
    RepMorphism,
    Representation,
    add_membership,
    cokernel,
    direct_sum,
    hom,
    injectives,
    is_isomorphic,
    kernel,
    projectives,
    simple_module,
    zero_rep,
)
from .homology import ext, is_stably_zero_module, resolve, syzygy


class IncompleteIndecList(ValueError):
    """The supplied indecomposable list fails a completeness sanity check."""


class ApproximationNotEpi(RuntimeError):
    """A right approximation missed part of its target (spec not generating)."""


class ApproximationNotMono(RuntimeError):
    """A left approximation killed part of its source (spec not cogenerating)."""


class FinalTermNotInSubcategory(RuntimeError):
    """The last kernel of a d-resolution walk is not an add-member."""


class SubcatSpec:
    """A finite list of generator modules with a tilting degree d.

    Generators are taken as given: each is expected to be a nonzero
    indecomposable, and indecomposability is the caller's assertion, not
    re-verified here.  ``labels`` names generators in reports; ``claims``
    is an optional list of claim tags carried through serialization.
    """

    def __init__(self, algebra: BoundQuiverAlgebra,
                 generators: list[Representation], d: int,
                 labels: list[str] | None = None,
                 claims: list[str] | None = None):
        if d < 1:
            raise ValueError("tilting degree must be at least 1")
        if not generators:
            raise ValueError("a subcategory spec needs at least one generator")
        for g in generators:
            if g.algebra is not algebra:
                raise AlgebraMismatch("generator over a different algebra")
            if g.total_dim == 0:
                raise ValueError("zero module cannot be a generator")
        if labels is None:
            labels = [f"G{i}" for i in range(len(generators))]
        if len(labels) != len(generators):
            raise ValueError("label count does not match generator count")
        self.algebra = algebra
        self.generators = list(generators)
        self.d = d
        self.labels = list(labels)
        self.claims = list(claims) if claims else []

    def label(self, i: int) -> str:
        return self.labels[i]

    def by_label(self, label: str) -> Representation:
        return self.generators[self.labels.index(label)]


@dataclass
class Check:
    ok: bool
    witness: object = None
    note: str = ""


@dataclass
class CTReport:
    mode: str
    checks: dict[str, Check]
    verdict: str  # "verified" | "refuted" | "certificate_only"
    counterexample: object = None


# ---------------------------------------------------------------------------
# approximations


def right_approximation(spec: SubcatSpec, N: Representation) -> RepMorphism:
    """The universal map onto N from a sum of generator copies.

    One copy of G per basis element of hom(G, N); every morphism from a
    generator to N factors through it by construction.
    """
    alg = spec.algebra
    if N.algebra is not alg:
        raise AlgebraMismatch("target lives over a different algebra")
    f = alg.field
    pieces: list[RepMorphism] = []
    srcs: list[Representation] = []
    for g in spec.generators:
        for b in hom(g, N).basis:
            pieces.append(b)
            srcs.append(g)
    if not pieces:
        return RepMorphism(zero_rep(alg), N, {}, check=False)
    S = direct_sum(srcs)
    mats = {}
    for v in alg.quiver.vertices:
        m = pieces[0].mats[v]
        for b in pieces[1:]:
            m = m.vstack(b.mats[v])
        mats[v] = m
    return RepMorphism(S, N, mats, check=False)


def left_approximation(spec: SubcatSpec, N: Representation) -> RepMorphism:
    """The universal map from N into a sum of generator copies."""
    alg = spec.algebra
    if N.algebra is not alg:
        raise AlgebraMismatch("source lives over a different algebra")
    pieces: list[RepMorphism] = []
    tgts: list[Representation] = []
    for g in spec.generators:
        for b in hom(N, g).basis:
            pieces.append(b)
            tgts.append(g)
    if not pieces:
        return RepMorphism(N, zero_rep(alg), {}, check=False)
    T = direct_sum(tgts)
    mats = {}
    for v in alg.quiver.vertices:
        m = pieces[0].mats[v]
        for b in pieces[1:]:
            m = m.hstack(b.mats[v])
        mats[v] = m
    return RepMorphism(N, T, mats, check=False)


def _is_epi(f: RepMorphism) -> bool:
    return all(rank(f.mats[v]) == f.tgt.dims[v] for v in f.mats)


def _is_mono(f: RepMorphism) -> bool:
    return all(rank(f.mats[v]) == f.src.dims[v] for v in f.mats)


# ---------------------------------------------------------------------------
# fragment checks


def verify_rigid(spec: SubcatSpec) -> Check:
    """No self-extensions among generators in degrees 1..d-1."""
    d = spec.d
    if d == 1:
        return Check(True, note="degree range empty for d=1")
    for t in range(1, d):
        for i, gi in enumerate(spec.generators):
            for j, gj in enumerate(spec.generators):
                dim = ext(gi, gj, t).dim
                if dim:
                    return Check(False,
                                 witness=(spec.labels[i], spec.labels[j], t),
                                 note=f"ext dimension {dim}")
    return Check(True)


def verify_gen_cogen(spec: SubcatSpec) -> dict[str, Check]:
    """Right approximations are onto, left approximations are injective.

    Surjectivity onto every projective is equivalent to generating the
    whole module category; injectives and simples are included as extra
    witnesses so a failure names the most recognizable test module.
    """
    alg = spec.algebra
    tests: list[tuple[str, Representation]] = []
    tests += [(f"P({v})", p) for v, p in projectives(alg)]
    tests += [(f"I({v})", i) for v, i in injectives(alg)]
    tests += [(f"S({v})", simple_module(alg, v)) for v in alg.quiver.vertices]
    generating = Check(True)
    for name, T in tests:
        f = right_approximation(spec, T)
        if not _is_epi(f):
            generating = Check(False, witness=name,
                               note="right approximation is not onto")
            break
    cogenerating = Check(True)
    for name, T in tests:
        g = left_approximation(spec, T)
        if not _is_mono(g):
            cogenerating = Check(False, witness=name,
                                 note="left approximation is not injective")
            break
    return {"generating": generating, "cogenerating": cogenerating}


def verify_dZ_closure(spec: SubcatSpec) -> Check:
    """Each d-th syzygy of a generator lies in add(generators + projectives)."""
    pool = spec.generators + [p for _, p in projectives(spec.algebra)]
    for i, g in enumerate(spec.generators):
        X = syzygy(g, spec.d)
        if not add_membership(X, pool):
            return Check(False, witness=spec.labels[i],
                         note="d-th syzygy escapes the additive closure")
    return Check(True)


def verify_cluster_tilting(spec: SubcatSpec, mode: str = "certificate",
                           indec_list: list[Representation] | None = None,
                           ) -> CTReport:
    if mode not in ("certificate", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    checks: dict[str, Check] = {}
    checks["rigid"] = verify_rigid(spec)
    gc = verify_gen_cogen(spec)
    checks["generating"] = gc["generating"]
    checks["cogenerating"] = gc["cogenerating"]
    checks["dZ_closure"] = verify_dZ_closure(spec)
    checks["functorially_finite"] = Check(
        True, note="universal approximations exist for finite generator lists")
    failed = [(name, c) for name, c in checks.items() if not c.ok]
    if failed:
        return CTReport(mode, checks, "refuted",
                        counterexample=(failed[0][0], failed[0][1].witness))
    if mode == "certificate":
        return CTReport(mode, checks, "certificate_only")

    if indec_list is None:
        raise ValueError("full mode needs the complete indecomposable list")
    _indec_list_sanity(spec.algebra, indec_list)
    d = spec.d
    for L in indec_list:
        ortho = all(ext(g, L, t).dim == 0 and ext(L, g, t).dim == 0
                    for t in range(1, d) for g in spec.generators)
        member = add_membership(L, spec.generators)
        if ortho != member:
            checks["orthogonality_equality"] = Check(
                False, witness=L,
                note="Ext-orthogonal module outside add(generators)"
                if ortho else "generator summand with self-extension")
            return CTReport(mode, checks, "refuted", counterexample=L)
    checks["orthogonality_equality"] = Check(True)
    return CTReport(mode, checks, "verified")


def _indec_list_sanity(alg: BoundQuiverAlgebra,
                       indec_list: list[Representation]) -> None:
    """A complete list must contain every projective, and the matched
    projectives must account for the algebra's dimension via Hom sums."""
    matched: dict[str, Representation] = {}
    for v, p in projectives(alg):
        for L in indec_list:
            if L.total_dim == p.total_dim and is_isomorphic(L, p):
                matched[v] = L
                break
        else:
            raise IncompleteIndecList(f"no copy of the projective at {v!r}")
    total = sum(hom(matched[u], matched[v]).dim
                for u in matched for v in matched)
    if total != alg.dimension:
        raise IncompleteIndecList(
            f"hom sums over matched projectives give {total}, "
            f"algebra dimension is {alg.dimension}")


# ---------------------------------------------------------------------------
# resolutions by approximations


@dataclass
class DResolution:
    """An exact sequence 0 -> terms[-1] -> ... -> terms[0] -> E -> 0."""
    terms: list[Representation]
    aug: RepMorphism               # terms[0] -> E
    diffs: list[RepMorphism]       # diffs[i]: terms[i+1] -> terms[i]


@dataclass
class DCoresolution:
    """An exact sequence 0 -> E -> terms[0] -> ... -> terms[-1] -> 0."""
    terms: list[Representation]
    coaug: RepMorphism             # E -> terms[0]
    diffs: list[RepMorphism]       # diffs[i]: terms[i] -> terms[i+1]


def d_resolution(spec: SubcatSpec, E: Representation) -> DResolution:
    """Iterated kernels of right approximations, at most d terms.

    The walk stops as soon as a kernel vanishes or lands in the additive
    closure of the generators; a shorter output therefore witnesses more
    Ext-vanishing against the generators, one degree per unused slot.
    """
    if add_membership(E, spec.generators):
        return DResolution([E], RepMorphism.identity(E), [])
    terms: list[Representation] = []
    approx: list[RepMorphism | None] = []
    incs: list[RepMorphism] = []
    cur = E
    while True:
        f = right_approximation(spec, cur)
        if not _is_epi(f):
            raise ApproximationNotEpi(
                "right approximation misses part of its target; "
                "the spec does not generate")
        terms.append(f.src)
        approx.append(f)
        K, inc = kernel(f)
        if K.total_dim == 0:
            break
        incs.append(inc)
        if len(terms) < spec.d and add_membership(K, spec.generators):
            terms.append(K)
            approx.append(None)
            break
        if len(terms) >= spec.d:
            raise FinalTermNotInSubcategory(
                f"kernel after {spec.d} approximation steps is nonzero "
                "and outside add(generators)")
        cur = K
    diffs: list[RepMorphism] = []
    for i in range(len(terms) - 1):
        nxt = approx[i + 1]
        diffs.append(incs[i] if nxt is None else nxt.compose(incs[i]))
    res = DResolution(terms, approx[0], diffs)
    assert _resolution_exact(res), "assembled resolution failed exactness"
    return res


def _resolution_exact(res: DResolution) -> bool:
    seq = [res.aug] + res.diffs     # seq[i]: terms[i] -> (E or terms[i-1])
    for i in range(len(seq) - 1):
        if not seq[i + 1].compose(seq[i]).is_zero():
            return False
    # onto at E, exact at middle terms, injective at the last term
    if not _is_epi(res.aug):
        return False
    for i in range(len(res.terms)):
        incoming = res.diffs[i] if i < len(res.diffs) else None
        outgoing = seq[i]
        for v in res.terms[i].dims:
            want = res.terms[i].dims[v] - rank(outgoing.mats[v])
            got = rank(incoming.mats[v]) if incoming is not None else 0
            if want != got:
                return False
    return True


def d_coresolution(spec: SubcatSpec, E: Representation) -> DCoresolution:
    """Iterated cokernels of left approximations, at most d terms."""
    if add_membership(E, spec.generators):
        return DCoresolution([E], RepMorphism.identity(E), [])
    terms: list[Representation] = []
    approx: list[RepMorphism | None] = []
    projs: list[RepMorphism] = []
    cur = E
    while True:
        g = left_approximation(spec, cur)
        if not _is_mono(g):
            raise ApproximationNotMono(
                "left approximation kills part of its source; "
                "the spec does not cogenerate")
        terms.append(g.tgt)
        approx.append(g)
        C, proj = cokernel(g)
        if C.total_dim == 0:
            break
        projs.append(proj)
        if len(terms) < spec.d and add_membership(C, spec.generators):
            terms.append(C)
            approx.append(None)
            break
        if len(terms) >= spec.d:
            raise FinalTermNotInSubcategory(
                f"cokernel after {spec.d} approximation steps is nonzero "
                "and outside add(generators)")
        cur = C
    diffs: list[RepMorphism] = []
    for i in range(len(terms) - 1):
        nxt = approx[i + 1]
        diffs.append(projs[i] if nxt is None else projs[i].compose(nxt))
    cores = DCoresolution(terms, approx[0], diffs)
    assert _coresolution_exact(cores), "assembled coresolution failed exactness"
    return cores


def _coresolution_exact(cores: DCoresolution) -> bool:
    seq = [cores.coaug] + cores.diffs   # seq[i]: (E or terms[i-1]) -> terms[i]
    for i in range(len(seq) - 1):
        if not seq[i].compose(seq[i + 1]).is_zero():
            return False
    if not _is_mono(cores.coaug):
        return False
    for i in range(len(cores.terms)):
        outgoing = cores.diffs[i] if i < len(cores.diffs) else None
        incoming = seq[i]
        for v in cores.terms[i].dims:
            # exactness at terms[i]: ker(outgoing) = im(incoming)
            if outgoing is not None:
                if cores.terms[i].dims[v] - rank(outgoing.mats[v]) \
                        != rank(incoming.mats[v]):
                    return False
            elif rank(incoming.mats[v]) != cores.terms[i].dims[v]:
                return False
    return True


# ---------------------------------------------------------------------------
# standard angles


@dataclass
class Angle:
    """The d+2 objects and d+1 maps of a standard angle."""
    objects: list[Representation]
    maps: list[RepMorphism]
    d: int


def standard_angle(spec: SubcatSpec, X: Representation,
                   d: int | None = None) -> Angle:
    """The angle spliced from the minimal resolution segment of X.

    Objects are [d-th syzygy, cover_{d-1}, ..., cover_0, X]; a projective
    d-th syzygy is allowed and gives a degenerate (stably zero) first term.
    """
    if d is None:
        d = spec.d
    if is_stably_zero_module(X):
        raise ValueError("angle needs a non-projective end term")
    res = resolve(X, d - 1)
    objects = [res.kernels[d]] \
        + [res.covers[i].rep for i in range(d - 1, -1, -1)] + [X]
    maps = [res.incs[d - 1]] \
        + [res.diff(i) for i in range(d - 1, 0, -1)] + [res.eps[0]]
    for i in range(len(maps) - 1):
        assert maps[i].compose(maps[i + 1]).is_zero(), "angle does not compose to zero"
    for i in range(1, len(objects) - 1):
        lhs = maps[i]
        rhs = maps[i - 1]
        for v in objects[i].dims:
            assert objects[i].dims[v] - rank(lhs.mats[v]) == rank(rhs.mats[v]), \
                "angle fails exactness"
    return Angle(objects, maps, d)
