"""The sign-localized slice spectral sequence of quotients by permutation
summands, for G = C_{2^n}.

The F2 model has E2 = F2[units][b, f_i : i not in J] with b at (2, -2) and
f_i at (2^i - 1, (2^n - 1)(2^i - 1)); stage k fires differentials of
length ell(k) = 2^n (2^(k+1) - 1) + 1 off b-powers whose k-th dyadic
digit is set.  The integral C2 variant runs the same schedule on
Z_(2)[v_i][u, a]/(2a) with free summands halving to 2g when their
generator fires.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import (
    ORDER_FREE,
    ORDER_TWO,
    ClassKey,
    DeadEndpointError,
    DifferentialInstance,
    GeneratorDecl,
    Page,
    RODegree,
    Summand,
    Window,
    apply_differentials,
    monomial_bidegree,
    turn_page,
)
from .f2core import (
    IndexSetJ,
    PoincareSeries,
    a_set_contains,
    a_set_enumerate,
    product_one_plus_t_pow,
)


def ell_length(n: int, k: int) -> int:
    """Length of the stage-k differential: 2^n (2^(k+1) - 1) + 1."""
    return (1 << n) * ((1 << (k + 1)) - 1) + 1


def make_window(n: int, j_set: IndexSetJ, stem_max: int,
                integral: bool = False) -> Window:
    """A stems-0..stem_max window padded so that every fate inside it is
    trustworthy.

    A stage-k source has b-exponent at least 2^k, hence stem at least
    2^(k+1), so only stages with 2^(k+1) - 1 <= stem_max can touch the
    window.  Killer chains descend in filtration by at most the sum of
    those stage lengths, and stems drift by one per page; the padding
    reflects exactly that."""
    drop = 8
    k = 0
    while (1 << (k + 1)) - 1 <= stem_max + 2:
        if (k + 1) not in j_set:
            drop += ((1 << (k + 2)) - 1) if integral else ell_length(n, k)
        k += 1
    return Window.stems(stem_max, pad_stem_lo=8, pad_stem_hi=16,
                        pad_filt_lo=drop, pad_filt_hi=8)


@dataclass(frozen=True)
class FGenerator:
    """The stage-i Euler-decorated norm class, atomic here: the inner
    structure never enters the arithmetic, only the bidegree does."""

    index: int
    n: int

    @property
    def bidegree(self) -> tuple[int, int]:
        d = (1 << self.index) - 1
        return d, ((1 << self.n) - 1) * d

    @property
    def name(self) -> str:
        return f"f{self.index}"

    def display(self) -> str:
        return f"a_rhobar^{(1 << self.index) - 1} N(sbar_{self.index})"


def _low_bits_allowed(e: int, k: int, j_set: IndexSetJ) -> bool:
    return a_set_contains(e % (1 << k), j_set) == 1 if k > 0 else True


def asigma_decls(n: int, j_set: IndexSetJ, window: Window) -> dict[str, GeneratorDecl]:
    """Generator declarations for the F2 page: b plus every surviving f_i
    whose bidegree can meet the padded window."""
    decls = {"b": GeneratorDecl.from_rodegree(
        "b", RODegree(n, one=2), t=0, order=ORDER_TWO)}
    i = 1
    while (1 << i) - 1 <= window.padded_stem_max:
        if i not in j_set:
            g = FGenerator(i, n)
            stem, filt = g.bidegree
            if stem + filt <= window.padded_stem_max + window.padded_filt_max:
                decls[g.name] = GeneratorDecl(g.name, stem, filt)
        i += 1
    return decls


def _f_monomials(decls, window):
    """All monomials in the f_i generators whose b-multiples can meet the
    padded window, as (exps, stem, filt) triples.  b-powers trade
    filtration for stem, so the bound is on stem and on stem + filt."""
    fs = sorted((d for name, d in decls.items() if name.startswith("f")),
                key=lambda d: d.stem)
    total_max = window.padded_stem_max + window.padded_filt_max
    out = [({}, 0, 0)]
    for d in fs:
        new = []
        for exps, stem, filt in out:
            m = 1
            while (stem + m * d.stem <= window.padded_stem_max
                   and (stem + filt) + m * (d.stem + d.filt) <= total_max):
                e2 = dict(exps)
                e2[d.name] = m
                new.append((e2, stem + m * d.stem, filt + m * d.filt))
                m += 1
        out.extend(new)
    return out


def _b_range(fstem, ffilt, window):
    lo = max(0,
             -(-(window.padded_stem_min - fstem) // 2),
             -(-(ffilt - window.padded_filt_max) // 2))
    hi = min((window.padded_stem_max - fstem) // 2,
             (ffilt - window.padded_filt_min) // 2)
    return lo, hi


def asigma_e2_page(n: int, j_set: IndexSetJ, window: Window) -> Page:
    decls = asigma_decls(n, j_set, window)
    table: dict[tuple[int, int], list[Summand]] = {}
    for exps, fstem, ffilt in _f_monomials(decls, window):
        lo, hi = _b_range(fstem, ffilt, window)
        for e in range(lo, hi + 1):
            key = ClassKey.of(b=e, **exps)
            pos = (fstem + 2 * e, ffilt - 2 * e)
            table.setdefault(pos, []).append(Summand(key, ORDER_TWO))
    return Page(2, {pos: tuple(ss) for pos, ss in table.items()})


@dataclass
class RunResult:
    n: int
    j_set: IndexSetJ
    window: Window
    pages: list[Page]
    instances: dict[int, list[DifferentialInstance]] = field(default_factory=dict)

    @property
    def lengths(self) -> list[int]:
        return sorted(r for r, insts in self.instances.items() if insts)

    @property
    def einfty(self) -> Page:
        return self.pages[-1]

    def instance_count(self) -> int:
        return sum(len(v) for v in self.instances.values())


def run_asigma(n: int, j_set: IndexSetJ, window: Window) -> RunResult:
    """Run the localized spectral sequence through E-infinity on the
    padded window.  Pages appear at index 2 and after each firing stage;
    stages with k+1 in J emit nothing and produce no page."""
    decls = asigma_decls(n, j_set, window)
    page = asigma_e2_page(n, j_set, window)
    result = RunResult(n, j_set, window, [page])
    e_max = max(0, window.padded_stem_max // 2)
    k = 0
    while (1 << k) <= max(e_max, 1):
        if (k + 1) not in j_set:
            r = ell_length(n, k)
            insts = _stage_instances(page, k, r, decls, j_set, window,
                                     f"d_{r}(b^{{2^{k}}}) family, stage k={k}",
                                     integral=False)
            if insts:
                page = apply_differentials(turn_page(page, r), insts, r + 1)
                result.pages.append(page)
                result.instances[r] = insts
        k += 1
    final = Page(page.r, page.table, page.ledger, final=True)
    result.pages[-1] = final
    return result


def _stage_instances(page, k, r, decls, j_set, window, citation, integral):
    """Stage-k instances: every live class whose exponent of b (resp. u)
    has digit k set and digits below k inside A(J) fires; the target
    appends the stage generator.  In the F2 model targets are always
    live; the integral model may fire into an already-dead target (or
    past the window edge), which kills the source alone."""
    gen = "b" if not integral else "u"
    step = ClassKey.of(**({f"f{k + 1}": 1} if not integral
                          else {f"v{k + 1}": 1, "a": (1 << (k + 2)) - 1}))
    insts = []
    for pos, s in page.summands():
        e = s.key.exp(gen)
        if not (e >> k) & 1 or not _low_bits_allowed(e, k, j_set):
            continue
        target = s.key.times(step.mono).times(((gen, -(1 << k)),))
        tpos = (pos[0] - 1, pos[1] + r)
        src = (s.key, 1)
        if not window.in_padded(tpos):
            insts.append(DifferentialInstance(r, src, None, citation))
            continue
        if page.is_live(target, 1):
            insts.append(DifferentialInstance(r, src, (target, 1), citation))
        elif integral or not window.in_inner(pos):
            # Integral mode fires into already-dead targets by design; in
            # the F2 model this only happens in the padding shell, where a
            # class's true killer can lie outside the computed region.
            insts.append(DifferentialInstance(r, src, None, citation,
                                              target_label=str(target)))
        else:
            raise DeadEndpointError(
                f"schedule error: target {target} dead at page {r} [{citation}]")
    return insts


def e_page_closed_form(n: int, j_set: IndexSetJ, k: int, window: Window) -> Page:
    """The page at index ell(k) in closed form: the module over
    F2[f_i : i >= k+1, i not in J][b^(2^k)] on the permanent cycles b^r,
    r < 2^k, r in A(J), materialized in the padded window."""
    decls = asigma_decls(n, j_set, window)
    allowed = {name for name in decls
               if name.startswith("f") and int(name[1:]) >= k + 1}
    table: dict[tuple[int, int], list[Summand]] = {}
    for exps, fstem, ffilt in _f_monomials(decls, window):
        if not set(exps) <= allowed:
            continue
        lo, hi = _b_range(fstem, ffilt, window)
        for e in range(lo, hi + 1):
            if k > 0 and not _low_bits_allowed(e, k, j_set):
                continue
            key = ClassKey.of(b=e, **exps)
            pos = (fstem + 2 * e, ffilt - 2 * e)
            table.setdefault(pos, []).append(Summand(key, ORDER_TWO))
    return Page(ell_length(n, k), {pos: tuple(ss) for pos, ss in table.items()})


def page_at_index(result: RunResult, r: int) -> Page:
    """The page in force at index r (pages persist between turns)."""
    best = result.pages[0]
    for p in result.pages:
        if p.r <= r:
            best = p
    return best


def gfp_poincare_oracle(j_set: IndexSetJ, degree_max: int) -> PoincareSeries:
    """Poincare series of the geometric fixed points: the product
    prod_{j in J} (1 + t^(2^j)), which the A(J) generating function must
    reproduce in degrees 2r."""
    series = product_one_plus_t_pow(j_set, degree_max)
    survivors = PoincareSeries.from_exponents(
        a_set_enumerate(j_set, degree_max // 2), degree_max, scale=2)
    if series != survivors:
        raise AssertionError(
            f"A(J) generating function disagrees with the fixed-point "
            f"product for J = {j_set.spec_string()}")
    return series


@dataclass(frozen=True)
class RingObstruction:
    obstructed: bool
    k: int | None = None
    witness_checked: bool = False

    def __str__(self) -> str:
        if not self.obstructed:
            return "unobstructed"
        tail = " (E-infinity witness verified)" if self.witness_checked else ""
        return f"obstructed(k={self.k}){tail}"


def ring_obstruction(j_set: IndexSetJ, check_witness: bool = True) -> RingObstruction:
    """Least k in J with k+1 not in J, if any.  Such a k forces
    b^(2^(k-1)) nonzero but its square zero at E-infinity, so no ring
    structure can exist; the witness is re-checked on a computed run."""
    candidates = [k for k in sorted(j_set.members) if (k + 1) not in j_set]
    if not candidates:
        return RingObstruction(False)
    k = candidates[0]
    witness = False
    if check_witness:
        stem_max = 1 << (k + 2)
        window = make_window(1, j_set, stem_max)
        einfty = run_asigma(1, j_set, window).einfty
        below = ClassKey.of(b=1 << (k - 1)) if k >= 1 else ClassKey.of()
        above = ClassKey.of(b=1 << k)
        witness = einfty.is_live(below, 1) and not einfty.is_live(above, 1)
        if not witness:
            raise AssertionError(f"ring obstruction witness failed for k={k}")
    return RingObstruction(True, k, witness)


# ---------------------------------------------------------------------------
# The integral C2 variant


Star = tuple[int, int]


def integral_decls(j_set: IndexSetJ, window: Window) -> dict[str, GeneratorDecl]:
    decls = {
        "u": GeneratorDecl.from_rodegree(
            "u", RODegree(1, one=2, sigma=-2), t=0, order=ORDER_FREE),
        "a": GeneratorDecl.from_rodegree(
            "a", RODegree(1, sigma=-1), t=0, order=ORDER_TWO),
    }
    i = 1
    while 2 * ((1 << i) - 1) <= window.padded_stem_max:
        if i not in j_set:
            d = (1 << i) - 1
            decls[f"v{i}"] = GeneratorDecl.from_rodegree(
                f"v{i}", RODegree(1, one=d, sigma=d), t=2 * d, order=ORDER_FREE)
        i += 1
    return decls


def _star_position(T: int, c: int, d: int, star: Star) -> tuple[int, int]:
    """Chart position of v^M u^c a^d in the (a + b sigma)-graded page:
    the monomial appears when its sigma-part matches b, at stem
    (1-part) - a; the filtration is the a_sigma exponent."""
    a_part, b_part = star
    return T + 2 * c - a_part, d


def _integral_monomials(j_set, window, star):
    """(exps, c, d, T) for every basis monomial of the star-graded page
    in the padded window.  d is forced: sigma-part = b requires
    d = T - 2c - b >= 0."""
    a_part, b_part = star
    if a_part - b_part < 0:
        raise ValueError("star must satisfy a - b >= 0")
    decls = integral_decls(j_set, window)
    vs = sorted((d for name, d in decls.items() if name.startswith("v")),
                key=lambda d: d.stem)
    monos = [({}, 0)]
    for d in vs:
        half = d.t // 2  # 2^i - 1
        new = []
        for exps, T in monos:
            m = 1
            while T + m * half + (0) <= window.padded_stem_max + abs(a_part):
                e2 = dict(exps)
                e2[d.name] = m
                new.append((e2, T + m * half))
                m += 1
        monos.extend(new)
    out = []
    for exps, T in monos:
        c = 0
        while True:
            d = T - 2 * c - b_part
            stem, filt = _star_position(T, c, d, star)
            if stem > window.padded_stem_max:
                break
            if d >= 0 and filt <= window.padded_filt_max and \
                    stem >= window.padded_stem_min:
                out.append((exps, c, d, T))
            if d < 0:
                break
            c += 1
    return out


def integral_e2_page(j_set: IndexSetJ, window: Window, star: Star = (0, 0)) -> Page:
    """E2 = Z_(2)[v_i : i not in J][u, a]/(2a) in the star grading:
    a-divisible monomials are 2-torsion, the rest are free."""
    table: dict[tuple[int, int], list[Summand]] = {}
    for exps, c, d, T in _integral_monomials(j_set, window, star):
        key = ClassKey.of(u=c, a=d, **exps)
        order = ORDER_TWO if d > 0 else ORDER_FREE
        pos = _star_position(T, c, d, star)
        table.setdefault(pos, []).append(Summand(key, order))
    return Page(2, {pos: tuple(sorted(ss, key=lambda s: str(s.key)))
                    for pos, ss in table.items()})


def run_c2_integral(j_set: IndexSetJ, window: Window, star: Star = (0, 0)) -> RunResult:
    """The integral slice spectral sequence for C2 in a JO(C2)+ grading.

    Differentials d_{2^(k+2)-1}(u^(2^k + r) x) = v_{k+1} u^r a^(2^(k+2)-1) x
    for r in A(J) run on the same dyadic schedule as the F2 model.  A
    family member whose target died on an earlier page still kills its
    source (the localized sequence finishes the job from below the
    grading cut), so sources fire unconditionally; free sources leave a
    free summand on 2g behind.
    """
    decls = integral_decls(j_set, window)
    page = integral_e2_page(j_set, window, star)
    result = RunResult(1, j_set, window, [page])
    c_max = max((s.key.exp("u") for _, s in page.summands()), default=0)
    k = 0
    while (1 << k) <= max(c_max, 1):
        if (k + 1) not in j_set:
            r = (1 << (k + 2)) - 1
            insts = _stage_instances(page, k, r, decls, j_set, window,
                                     f"integral stage k={k}", integral=True)
            if insts:
                page = apply_differentials(turn_page(page, r), insts, r + 1)
                result.pages.append(page)
                result.instances[r] = insts
        k += 1
    result.pages[-1] = turn_page(page, page.r, final=True)
    return result


def closed_form_c2_integral(j_set: IndexSetJ, window: Window,
                            star: Star = (0, 0)) -> Page:
    """E-infinity in closed form: over Z_(2)[v_i | i not in J][a_sigma]
    with 2 a_sigma = 0 and v_i a_sigma^(2^(i+1)-1) = 0, the module on
    u^r (r in A(J)) and the index-two generators 2 u^s (s not in A(J),
    carried by free summands on 2g)."""
    table: dict[tuple[int, int], list[Summand]] = {}
    for exps, c, d, T in _integral_monomials(j_set, window, star):
        if a_set_contains(c, j_set):
            if exps and d >= min((1 << (i + 1)) - 1
                                 for i in (int(n[1:]) for n in exps)):
                continue
            order = ORDER_TWO if d > 0 else ORDER_FREE
            index2 = False
        else:
            if d != 0:
                continue
            order, index2 = ORDER_FREE, True
        key = ClassKey.of(u=c, a=d, **exps)
        pos = _star_position(T, c, d, star)
        table.setdefault(pos, []).append(Summand(key, order, index2))
    return Page(0, {pos: tuple(sorted(ss, key=lambda s: str(s.key)))
                    for pos, ss in table.items()}, final=True)


def live_table(page: Page, window: Window | None = None,
               inner_only: bool = True) -> dict:
    """{bidegree: sorted display keys} of live classes, optionally
    restricted to the inner window."""
    out = {}
    for pos, ss in sorted(page.table.items()):
        if window is not None and inner_only and not window.in_inner(pos):
            continue
        out[pos] = tuple(sorted(s.display_key() for s in ss))
    return out
