"""The relative Adams spectral sequence of the height-m quotient algebra
R<m>, and its dictionary to the C2-level localized slice spectral
sequence of the height-(2m) integral Morava flavor.

The E2-page is F2[xi] (x) E(beta(2), ..., beta(2^(m-1))) (x) F2[e], with
|xi| = (2^m - 1, 1), |e| = (2^(m+1), 0), |beta(l)| = (-l, 0).  The class
beta(l) e^k is a permanent cycle iff k <= l (on the fundamental domain);
otherwise it supports a d_{1+2^(i+1)} determined by the kappa
decomposition of k.  The global degree shift 2^m - 2 is metadata applied
at translation and chart time only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import (
    ORDER_TWO,
    turn_page,
    ClassKey,
    DifferentialInstance,
    GeneratorDecl,
    Page,
    Summand,
    Window,
    apply_differentials,
)
from functools import lru_cache

from .f2core import binom_mod2, kappa_decomposition


def beta_multiply(l1: int, l2: int, m: int):
    """beta(l1) * beta(l2): beta(l1 + l2) when the dyadic supports are
    disjoint and the sum stays in range, zero otherwise (exterior
    squares vanish).  Disjointness is exactly binom_mod2(l1+l2, l1)."""
    top = (1 << m) - 2
    for name, l in (("l1", l1), ("l2", l2)):
        if l % 2 or not 0 <= l <= top:
            raise ValueError(f"{name} = {l} is not an even beta index for m = {m}")
    if l1 + l2 > top or not binom_mod2(l1 + l2, l1):
        return None
    return l1 + l2


@dataclass(frozen=True)
class Fate:
    """classify() outcome for a base class beta(l) e^k."""

    l: int
    k: int
    m: int
    permanent: bool
    length: int | None = None
    i: int | None = None
    kappa: int | None = None
    n: int | None = None
    target: tuple[int, int] | None = None  # (l', k')

    def __str__(self) -> str:
        if self.permanent:
            return f"beta({self.l}) e^{self.k}: permanent cycle"
        l2, k2 = self.target
        return (f"d_{self.length}(beta({self.l}) e^{self.k}) = "
                f"xi^{self.length} beta({l2}) e^{k2}")


@lru_cache(maxsize=None)
def classify(l: int, k: int, m: int) -> Fate:
    """Fate of beta(l) e^k: permanent iff no kappa decomposition exists
    (on the fundamental domain that means k <= l; larger k reduce mod
    2^m by e-periodicity); otherwise the differential of length
    1 + 2^(i+1) onto xi^(1+2^(i+1)) beta(l + 2^m - 2^(i+1)) e^(k - 2^i)."""
    if l % 2 or not 0 <= l <= (1 << m) - 2:
        raise ValueError(f"l = {l} is not an even beta index for m = {m}")
    if k < 0:
        raise ValueError("e-exponent must be non-negative")
    dec = kappa_decomposition(l, k, m)
    if dec is None:
        return Fate(l, k, m, permanent=True)
    i, kappa, n = dec
    r = 1 + (1 << (i + 1))
    return Fate(l, k, m, permanent=False, length=r, i=i, kappa=kappa, n=n,
                target=(l + (1 << m) - (1 << (i + 1)), k - (1 << i)))


def verify_degree_equation(fate: Fate) -> bool:
    """The degree bookkeeping of a differential instance:
    2^(m+1) k - l - 1 = (2^m - 1)(1 + 2r) + 2^(m+1)(k - s) - l'
    with r = s = 2^i."""
    if fate.permanent:
        return True
    m, l, k = fate.m, fate.l, fate.k
    l2, k2 = fate.target
    r = s = 1 << fate.i
    lhs = (1 << (m + 1)) * k - l - 1
    rhs = ((1 << m) - 1) * (1 + 2 * r) + (1 << (m + 1)) * (k - s) - l2
    return lhs == rhs and k2 == k - s


def degree_shift(m: int) -> int:
    """The global suspension carried as metadata: 2^m - 2."""
    return (1 << m) - 2


TRUNCATED = "truncated"
PERIODIC = "periodic"


def reladams_decls(m: int) -> dict[str, GeneratorDecl]:
    return {
        "xi": GeneratorDecl("xi", (1 << m) - 1, 1),
        "e": GeneratorDecl("e", 1 << (m + 1), 0),
        "beta": GeneratorDecl("beta", -1, 0),  # exponent carries the index l
    }


@lru_cache(maxsize=None)
def _key(s: int, l: int, k: int) -> ClassKey:
    return ClassKey.of(xi=s, beta=l, e=k)


def _bidegree(m: int, s: int, l: int, k: int) -> tuple[int, int]:
    return s * ((1 << m) - 1) + (1 << (m + 1)) * k - l, s


@dataclass
class RelAdamsResult:
    m: int
    mode: str
    k_max: int
    s_max: int
    pages: list[Page]
    instances: dict[int, list[DifferentialInstance]] = field(default_factory=dict)
    skipped: list[tuple[int, ClassKey]] = field(default_factory=list)

    @property
    def lengths(self):
        return sorted(r for r, v in self.instances.items() if v)

    @property
    def einfty(self) -> Page:
        return self.pages[-1]

    def all_instances(self):
        for r in sorted(self.instances):
            yield from self.instances[r]


def reladams_e2_page(m: int, k_max: int, s_max: int, mode: str) -> Page:
    table: dict[tuple[int, int], list[Summand]] = {}
    k_top = min(k_max, (1 << m) - 1) if mode == TRUNCATED else k_max
    for s in range(s_max + 1):
        for l in range(0, (1 << m) - 1, 2):
            for k in range(k_top + 1):
                pos = _bidegree(m, s, l, k)
                table.setdefault(pos, []).append(Summand(_key(s, l, k), ORDER_TWO))
    
    return Page(2, {pos: tuple(ss) for pos, ss in table.items()})


def run_rel_adams(m: int, k_max: int, mode: str = TRUNCATED,
                  s_max: int | None = None) -> RelAdamsResult:
    """Replay the full differential schedule through E-infinity.

    Differentials of length 1 + 2^(i+1) run for i = 0..m-1, xi-linearly
    over every live base class whose classify() fate has that length.
    The run is padded beyond (k_max, s_max): shell classes whose partner
    falls outside the computed block die into the void, and assertions
    are made on the inner block only.  A dead target under an inner
    source would be a genuine schedule violation and raises.
    """
    if mode not in (TRUNCATED, PERIODIC):
        raise ValueError(f"unknown truncation mode {mode!r}")
    if s_max is None:
        s_max = (1 << (m + 1)) + 4
    pad_s = (1 << m) + 4
    pad_k = 0 if mode == TRUNCATED else (1 << m)
    k_top = min(k_max + pad_k, (1 << m) - 1) if mode == TRUNCATED else k_max + pad_k
    s_top = s_max + pad_s
    page = reladams_e2_page(m, k_max + pad_k, s_top, mode)
    result = RelAdamsResult(m, mode, k_max, s_max, [page])
    bases = {}
    for l in range(0, (1 << m) - 1, 2):
        for k in range(k_top + 1):
            fate = classify(l, k, m)
            if not fate.permanent:
                bases.setdefault(fate.length, []).append(fate)
    for i in range(m):
        r = 1 + (1 << (i + 1))
        insts = []
        for fate in bases.get(r, ()):
            l, k = fate.l, fate.k
            l2, k2 = fate.target
            cite = f"length-{r} family, base (l={l}, k={k})"
            for s in range(s_top + 1):
                skey = _key(s, l, k)
                if not page.is_live(skey, 1):
                    continue
                tkey = _key(s + r, l2, k2)
                if page.is_live(tkey, 1):
                    insts.append(DifferentialInstance(r, (skey, 1), (tkey, 1), cite))
                elif k > k_max or s + r > s_top:
                    insts.append(DifferentialInstance(r, (skey, 1), None,
                                                      cite, str(tkey)))
                else:
                    result.skipped.append((r, skey))
        if insts:
            page = apply_differentials(turn_page(page, r), insts, r + 1)
            result.pages.append(page)
            result.instances[r] = insts
    result.pages[-1] = turn_page(page, page.r, final=True)
    return result


def inner_einfty_keys(result: RelAdamsResult) -> set[ClassKey]:
    """Survivors within the inner (k <= k_max, s <= s_max) block."""
    return {s.key for _, s in result.einfty.summands()
            if s.key.exp("e") <= result.k_max and s.key.exp("xi") <= result.s_max}


def einfty_closed_form(m: int, k_max: int, s_max: int, mode: str) -> set[ClassKey]:
    """Survivors in closed form: permanent bases beta(l) e^k carry an
    xi-tower of height one less than the length of the differential that
    truncates the tower (the phi-partner of the base)."""
    from .f2core import phi

    out = set()
    k_top = min(k_max, (1 << m) - 1) if mode == TRUNCATED else k_max
    for l in range(0, (1 << m) - 1, 2):
        for k in range(k_top + 1):
            if not classify(l, k, m).permanent:
                continue
            k_eff = k % (1 << m)
            _, k_src = phi(l, k_eff, m)
            r = 1 + 2 * (k_src - k_eff)  # 1 + 2^(i+1)
            for s in range(min(r, s_max + 1)):
                out.add(_key(s, l, k))
    return out


# ---------------------------------------------------------------------------
# Dictionary to the C2-level slice spectral sequence


def slice_length(m: int, r: int) -> int:
    """A relative Adams d_r is an ordinary localized slice
    d_{2 (2^m - 1) r + 1}."""
    return 2 * ((1 << m) - 1) * r + 1


def prestage_length(m: int, n: int) -> int:
    """Length of the slice stage that identifies the norm generator with
    its conjugate before the Adams dictionary applies."""
    return (1 << (n - 1)) * ((1 << m) - 1) + 1


def to_slice_class(m: int, s: int, l: int, k: int) -> ClassKey:
    """Summary dictionary: beta(l) corresponds to b^((2^m - 2 - l)/2),
    e to b^(2^m), xi to the norm-generator class with its Euler
    decoration; the result is the canonical C2-slice monomial."""
    if l % 2 or not 0 <= l <= (1 << m) - 2:
        raise ValueError(f"beta index {l} outside the dictionary range")
    b_exp = (1 << m) * k + ((1 << m) - 2 - l) // 2
    return ClassKey.of(t2=s, u2=b_exp, a2=3 * s - 2 * b_exp) if m == 2 else \
        ClassKey.of(**{f"t{m}": s, "u2": b_exp, "a2": ((1 << m) - 1) * s - 2 * b_exp})


def to_slice_grading(m: int, n: int, inst: DifferentialInstance) -> DifferentialInstance:
    """Translate one Adams instance into slice grading (lengths scale by
    2(2^m - 1), monomials through the b/beta dictionary; the global
    degree shift is built into the b-exponents)."""
    if inst.target is None:
        raise ValueError("cannot translate a boundary instance")
    skey, _ = inst.source
    tkey, _ = inst.target
    src = to_slice_class(m, skey.exp("xi"), skey.exp("beta"), skey.exp("e"))
    tgt = to_slice_class(m, tkey.exp("xi"), tkey.exp("beta"), tkey.exp("e"))
    return DifferentialInstance(slice_length(m, inst.r), (src, 1), (tgt, 1),
                                citation=f"translated: {inst.citation}")


# ---------------------------------------------------------------------------
# The C2-level slice spectral sequence of the height-4 example (m = 2)


C2_DECLS = {
    "t2": GeneratorDecl("t2", 6, 0),
    "gt2": GeneratorDecl("gt2", 6, 0),
    "u2": GeneratorDecl("u2", 0, 0),
    "a2": GeneratorDecl("a2", -1, 1, invertible=True),
}


def c2slice_window(stem_max: int) -> Window:
    return Window.stems(stem_max, pad_stem_lo=8, pad_stem_hi=16,
                        pad_filt_lo=7 + 19 + 31 + 8, pad_filt_hi=36)


def _c2_pos(n_tot: int, c: int) -> tuple[int, int]:
    return 3 * n_tot + 2 * c, 3 * n_tot - 2 * c


def c2slice_e2_page(window: Window) -> Page:
    """E2 = F2[u, a^(+-1), t, gamma t] in integer grading: monomials
    t^p (gamma t)^q u^c with the a-exponent 3(p+q) - 2c pinned by
    integrality."""
    table: dict[tuple[int, int], list[Summand]] = {}
    n_tot = 0
    while 3 * n_tot <= window.padded_stem_max + 2 * max(0, -window.padded_filt_min):
        placed = False
        for c in range(0, (window.padded_stem_max - 3 * n_tot) // 2 + 1):
            pos = _c2_pos(n_tot, c)
            if not window.in_padded(pos):
                continue
            placed = True
            for p in range(n_tot + 1):
                key = ClassKey.of(t2=p, gt2=n_tot - p, u2=c, a2=3 * n_tot - 2 * c)
                table.setdefault(pos, []).append(Summand(key, ORDER_TWO))
        if not placed and 3 * n_tot > window.padded_stem_max:
            break
        n_tot += 1
    return Page(2, {pos: tuple(ss) for pos, ss in table.items()})


def c2_canonical_key(n_tot: int, c: int) -> ClassKey:
    return ClassKey.of(t2=n_tot, u2=c, a2=3 * n_tot - 2 * c)


def c2slice_d7_stage(page: Page, window: Window):
    """The identification stage: in each column (N, c) with c = 2, 3 mod 4
    the map sends the basis monomial with gamma-degree split (p, q) to the
    sum of its two liftings in column (N+1, c-2); it is injective with a
    one-dimensional cokernel on the pure-power representative.  Sources
    all die; targets collapse onto the canonical gamma-free class.
    """
    r = prestage_length(2, 2)  # = 7
    deaths = {}
    instances = []
    for pos, s in page.summands():
        c = s.key.exp("u2")
        n_tot = s.key.exp("t2") + s.key.exp("gt2")
        if c % 4 in (2, 3):
            tpos = (pos[0] - 1, pos[1] + r)
            label = str(c2_canonical_key(n_tot + 1, c - 2))
            deaths[s.key] = ("source", label)
            instances.append(DifferentialInstance(
                r, (s.key, 1), None, citation="identification stage",
                target_label=label))
        elif n_tot >= 1 and s.key.exp("gt2") > 0:
            # non-canonical representative, absorbed into the cokernel class
            deaths[s.key] = ("target", str(c2_canonical_key(n_tot - 1, c + 2)))
    new_table = {}
    ledger = dict(page.ledger)
    from .engine import LedgerEntry
    for pos, ss in page.table.items():
        keep = []
        for s in ss:
            hit = deaths.get(s.key)
            if hit is None:
                keep.append(s)
            else:
                role, partner = hit
                ledger[(s.key, 1)] = LedgerEntry(r, partner, role, pos[0], pos[1],
                                                 "identification stage")
        if keep:
            new_table[pos] = tuple(keep)
    return Page(r + 1, new_table, ledger), instances


HARDCODED_C2_FAMILIES = (
    # (length, source (N, c) template, target (N, c) template); parameters
    # s >= 0 (norm-class exponent) and n >= 0 (periodicity).
    (19, lambda s, n: (s, 5 + 8 * n), lambda s, n: (s + 3, 8 * n)),
    (31, lambda s, n: (s, 9 + 16 * n), lambda s, n: (s + 5, 1 + 16 * n)),
    (31, lambda s, n: (s, 12 + 16 * n), lambda s, n: (s + 5, 4 + 16 * n)),
)


def hardcoded_c2_instances(window: Window) -> dict[int, list[DifferentialInstance]]:
    """The printed post-identification families, swept over the window.
    The length-19 target exponent printed in the source text is off by
    one power of the (2,-2) class against the differential bidegree law;
    the law pins it and the Adams translation agrees."""
    out: dict[int, list[DifferentialInstance]] = {19: [], 31: []}
    for length, src_f, tgt_f in HARDCODED_C2_FAMILIES:
        for s in range(0, (window.padded_filt_max // 3) + 2):
            n = 0
            while True:
                ns, cs = src_f(s, n)
                pos = _c2_pos(ns, cs)
                if pos[0] > window.padded_stem_max:
                    break
                nt, ct = tgt_f(s, n)
                if window.in_padded(pos):
                    out[length].append(DifferentialInstance(
                        length, (c2_canonical_key(ns, cs), 1),
                        (c2_canonical_key(nt, ct), 1),
                        citation=f"post-identification d_{length} family"))
                n += 1
    return out


@dataclass
class C2SliceResult:
    window: Window
    pages: list[Page]
    instances: dict[int, list[DifferentialInstance]] = field(default_factory=dict)
    skipped: list[tuple[int, ClassKey]] = field(default_factory=list)

    @property
    def lengths(self):
        return sorted(r for r, v in self.instances.items() if v)

    @property
    def einfty(self) -> Page:
        return self.pages[-1]


def run_c2_slice_bp22(window: Window, families: str = "translated") -> C2SliceResult:
    """The C2-level slice spectral sequence of the height-4 quotient:
    the identification stage, then the Adams families imported through
    the dictionary (families="translated") or the hardcoded printed list
    (families="hardcoded")."""
    page = c2slice_e2_page(window)
    result = C2SliceResult(window, [page])
    page, d7_insts = c2slice_d7_stage(page, window)
    result.pages.append(page)
    result.instances[7] = d7_insts

    if families == "translated":
        by_length = translated_c2_instances(window)
    elif families == "hardcoded":
        by_length = hardcoded_c2_instances(window)
    else:
        raise ValueError(families)

    for r in sorted(by_length):
        insts = []
        for inst in by_length[r]:
            if not page.is_live(inst.source[0], 1):
                result.skipped.append((r, inst.source[0]))
                continue
            tpos = page.position(inst.target[0])
            if tpos is None:
                spos = page.position(inst.source[0])
                if spos and not window.in_padded((spos[0] - 1, spos[1] + r)):
                    insts.append(DifferentialInstance(r, inst.source, None,
                                                      inst.citation,
                                                      str(inst.target[0])))
                    continue
                result.skipped.append((r, inst.source[0]))
                continue
            insts.append(inst)
        if insts:
            page = apply_differentials(turn_page(page, r), insts, r + 1)
            result.pages.append(page)
            result.instances[r] = insts
    result.pages[-1] = turn_page(page, page.r, final=True)
    return result


def translated_c2_instances(window: Window) -> dict[int, list[DifferentialInstance]]:
    """Slice instances obtained by running the m = 2 relative Adams
    spectral sequence in periodic mode and translating every instance."""
    k_max = window.padded_stem_max // 8 + 2
    s_max = window.padded_filt_max // 3 + 4
    adams = run_rel_adams(2, k_max, PERIODIC, s_max=s_max)
    out: dict[int, list[DifferentialInstance]] = {}
    for inst in adams.all_instances():
        if inst.target is None:
            continue  # boundary shell of the Adams run
        tr = to_slice_grading(2, 2, inst)
        spos = _c2_pos(tr.source[0].exp("t2"), tr.source[0].exp("u2"))
        if window.in_padded(spos):
            out.setdefault(tr.r, []).append(tr)
    return out
