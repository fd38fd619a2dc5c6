"""Generic bigraded spectral-sequence substrate.

Pages are sparse tables of cyclic summands (Z/2, Z/4, or free 2-local)
indexed by (stem, filtration).  Differentials are applied a full page at
a time with fixed homology rules for each source/target summand shape,
and every death is recorded in a ledger that is never overwritten.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

Bidegree = tuple[int, int]

ORDER_TWO = "two"
ORDER_FOUR = "four"
ORDER_FREE = "free"

#: ledger partner used when a differential leaves the computed region
OUT_OF_WINDOW = "(out of window)"


class EngineError(Exception):
    pass


class UndeclaredGeneratorError(EngineError):
    pass


class DeadEndpointError(EngineError):
    pass


class DoubleAssignmentError(EngineError):
    pass


class BidegreeLawError(EngineError):
    pass


class InvalidTargetError(EngineError):
    pass


# ---------------------------------------------------------------------------
# RO-degrees and generator declarations


@dataclass(frozen=True)
class RODegree:
    """A virtual real representation degree of C_{2^n} over the basis
    {1, sigma, lambda_0, ..., lambda_{n-2}}."""

    n: int
    one: int = 0
    sigma: int = 0
    lam: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group exponent n >= 1 required")
        if len(self.lam) > max(self.n - 1, 0):
            raise ValueError("too many lambda coefficients for C_{2^n}")
        if len(self.lam) < max(self.n - 1, 0):
            object.__setattr__(self, "lam", self.lam + (0,) * (self.n - 1 - len(self.lam)))

    @property
    def underlying_dim(self) -> int:
        return self.one + self.sigma + 2 * sum(self.lam)

    @property
    def is_integral(self) -> bool:
        return self.sigma == 0 and all(c == 0 for c in self.lam)

    def __add__(self, other: "RODegree") -> "RODegree":
        if self.n != other.n:
            raise ValueError("RO-degrees of different groups")
        return RODegree(self.n, self.one + other.one, self.sigma + other.sigma,
                        tuple(a + b for a, b in zip(self.lam, other.lam)))

    def scale(self, c: int) -> "RODegree":
        return RODegree(self.n, c * self.one, c * self.sigma,
                        tuple(c * x for x in self.lam))

    @classmethod
    def zero(cls, n: int) -> "RODegree":
        return cls(n)

    @classmethod
    def regular(cls, n: int) -> "RODegree":
        """The regular representation rho of C_{2^n}."""
        return cls(n, 1, 1, (1,) * (n - 1))


@dataclass(frozen=True)
class GeneratorDecl:
    """A named multiplicative generator.

    Each unit of exponent contributes (stem, filt) to the bidegree of a
    monomial; slice-style generators derive these from an RO-degree and
    a slice weight t, chart-style ones declare them directly.
    """

    name: str
    stem: int
    filt: int
    order: str = ORDER_TWO  # unit / free / two hint
    invertible: bool = False
    rodeg: RODegree | None = None
    t: int | None = None

    @classmethod
    def from_rodegree(cls, name: str, rodeg: RODegree, t: int,
                      order: str = ORDER_TWO, invertible: bool = False) -> "GeneratorDecl":
        stem = rodeg.underlying_dim
        return cls(name, stem, t - stem, order, invertible, rodeg, t)


Mono = tuple[tuple[str, int], ...]


def make_mono(exps: Mapping[str, int]) -> Mono:
    return tuple(sorted((g, e) for g, e in exps.items() if e != 0))


def mono_mul(a: Mono, b: Mono) -> Mono:
    exps = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return make_mono(exps)


def mono_pow(a: Mono, c: int) -> Mono:
    return make_mono({g: c * e for g, e in a})


@dataclass(frozen=True, eq=False)
class ClassKey:
    """A named monomial in declared generators, optionally a transfer."""

    mono: Mono
    transfer: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.mono, self.transfer)))
        object.__setattr__(self, "_str", None)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return (self is other
                or (isinstance(other, ClassKey) and self.mono == other.mono
                    and self.transfer == other.transfer))

    def __lt__(self, other: "ClassKey") -> bool:
        return (self.transfer or "", self.mono) < (other.transfer or "", other.mono)

    def __str__(self) -> str:
        if self._str is None:
            if not self.mono:
                body = "1"
            else:
                body = " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.mono)
            object.__setattr__(self, "_str", f"tr[{body}]" if self.transfer else body)
        return self._str

    @classmethod
    def of(cls, transfer: str | None = None, **exps: int) -> "ClassKey":
        return cls(make_mono(exps), transfer)

    def exp(self, gen: str) -> int:
        for g, e in self.mono:
            if g == gen:
                return e
        return 0

    def times(self, other: Mono) -> "ClassKey":
        return ClassKey(mono_mul(self.mono, other), self.transfer)


def monomial_bidegree(mono: Mono, decls: Mapping[str, GeneratorDecl]) -> Bidegree:
    """(stem, filtration) of a monomial: stem and filtration are both
    additive over the declared generators."""
    stem = filt = 0
    for g, e in mono:
        if g not in decls:
            raise UndeclaredGeneratorError(f"undeclared generator {g!r}")
        d = decls[g]
        stem += e * d.stem
        filt += e * d.filt
    return stem, filt


def monomial_rodegree(mono: Mono, decls: Mapping[str, GeneratorDecl], n: int) -> RODegree:
    total = RODegree.zero(n)
    for g, e in mono:
        d = decls.get(g)
        if d is None:
            raise UndeclaredGeneratorError(f"undeclared generator {g!r}")
        if d.rodeg is None:
            raise EngineError(f"generator {g!r} carries no RO-degree")
        total = total + d.rodeg.scale(e)
    return total


def canonicalize_units(mono: Mono, decls: Mapping[str, GeneratorDecl],
                       composites: Iterable[tuple[str, str, str, int]] = ()) -> Mono:
    """Canonical representative of a monomial modulo invertible units.

    composites: (b_name, u_name, a_name, a_power) records b = u / a^power;
    each u-exponent is absorbed into b before the exponents of invertible
    generators are normalized to zero.  Two monomials that agree up to
    units share one canonical key; chart positions still come from the
    original monomial.
    """
    exps = dict(mono)
    for b_name, u_name, a_name, a_power in composites:
        c = exps.pop(u_name, 0)
        if c:
            exps[b_name] = exps.get(b_name, 0) + c
            exps[a_name] = exps.get(a_name, 0) + c * a_power
    for g in list(exps):
        if g in decls and decls[g].invertible:
            del exps[g]
    return make_mono(exps)


# ---------------------------------------------------------------------------
# Summands, pages, differentials


@dataclass(frozen=True)
class Summand:
    """One cyclic summand.  index2 means the surviving generator is 2g
    (a reduced Z/4 "pink" class, or a free summand continuing on 2g)."""

    key: ClassKey
    order: str
    index2: bool = False

    def __post_init__(self):
        if self.order not in (ORDER_TWO, ORDER_FOUR, ORDER_FREE):
            raise ValueError(f"unknown order {self.order!r}")
        if self.order == ORDER_FOUR and self.index2:
            raise ValueError("a Z/4 on 2g is recorded as order two")

    def live_mults(self) -> tuple[int, ...]:
        if self.order == ORDER_FOUR:
            return (1, 2)
        if self.index2:
            return (2,)
        if self.order == ORDER_FREE:
            return (1, 2)
        return (1,)

    def element_mult(self) -> int:
        """Multiplicity an unprefixed table reference binds to."""
        return 2 if self.index2 else 1

    def display_key(self) -> str:
        return ("2*" if self.index2 else "") + str(self.key)


Element = tuple[ClassKey, int]


@dataclass(frozen=True)
class LedgerEntry:
    page: int
    partner: str
    role: str  # "source" | "target"
    stem: int
    filt: int
    citation: str = ""


@dataclass(frozen=True)
class DifferentialInstance:
    r: int
    source: Element
    target: Element | None  # None: the class dies into the void (boundary
    # of the computed window, or an integral family firing into an
    # already-dead target; see the C2 integral runner)
    citation: str = ""
    target_label: str = ""

    def check_bidegree(self, source_pos: Bidegree, target_pos: Bidegree) -> None:
        want = (source_pos[0] - 1, source_pos[1] + self.r)
        if target_pos != want:
            raise BidegreeLawError(
                f"d_{self.r} from {source_pos} must land at {want}, got "
                f"{target_pos} [{self.citation}]")


@dataclass
class Page:
    """An immutable-by-convention snapshot of one page.

    table maps bidegree -> tuple of summands; ledger maps (key, mult) ->
    its death record.  Entries are never overwritten.
    """

    r: int
    table: dict[Bidegree, tuple[Summand, ...]]
    ledger: dict[tuple[ClassKey, int], LedgerEntry] = field(default_factory=dict)
    final: bool = False
    _index: dict[ClassKey, tuple[Bidegree, "Summand"]] = field(
        default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {s.key: (pos, s)
                           for pos, ss in self.table.items() for s in ss}

    # -- queries ----------------------------------------------------------

    def position(self, key: ClassKey) -> Bidegree | None:
        hit = self._index.get(key)
        return hit[0] if hit else None

    def summand(self, key: ClassKey) -> Summand | None:
        hit = self._index.get(key)
        return hit[1] if hit else None

    def is_live(self, key: ClassKey, mult: int) -> bool:
        s = self.summand(key)
        return s is not None and mult in s.live_mults()

    def summands(self) -> Iterable[tuple[Bidegree, Summand]]:
        for pos in sorted(self.table):
            for s in self.table[pos]:
                yield pos, s

    def dims_at(self, pos: Bidegree) -> int:
        """F2-dimension count at a bidegree (a Z/4 counts 2, free counts 1
        per exposed generator level)."""
        return sum(len(s.live_mults()) if s.order == ORDER_FOUR else 1
                   for s in self.table.get(pos, ()))

    def class_count(self) -> int:
        return sum(len(ss) for ss in self.table.values())

    # -- serialization ----------------------------------------------------

    SCHEMA = "slicess-page/1"

    def to_json_dict(self) -> dict:
        classes = []
        for (stem, filt), ss in sorted(self.table.items()):
            for s in sorted(ss, key=lambda s: str(s.key)):
                classes.append({
                    "key": s.display_key(),
                    "stem": stem,
                    "filtration": filt,
                    "order": s.order,
                    "transfer_tag": s.key.transfer,
                })
        ledger = []
        for (key, mult), e in sorted(self.ledger.items(),
                                     key=lambda kv: (str(kv[0][0]), kv[0][1])):
            ledger.append({
                "key": ("2*" if mult == 2 else "") + str(key),
                "stem": e.stem,
                "filtration": e.filt,
                "died_on_page": e.page,
                "partner": e.partner,
                "role": e.role,
                "citation": e.citation,
            })
        return {"schema": self.SCHEMA, "page": self.r, "final": self.final,
                "classes": classes, "ledger": ledger}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=True) + "\n"


def apply_differentials(page: Page, instances: list[DifferentialInstance],
                        next_r: int) -> Page:
    """Turn the page: apply one full page of differentials and produce the
    page at index next_r.

    Homology rules, per endpoint:
      source g of Z/2       -> summand removed
      source g of Z/4       -> 2g remains as Z/2 ("pink")
      source 2g of Z/4      -> g remains as Z/2
      source g of free      -> free summand continues on 2g
      target y of Z/2       -> summand removed
      target 2h of Z/4      -> h remains as Z/2
    Anything else as a target is a homological impossibility and raises.
    """
    by_element: dict[Element, DifferentialInstance] = {}
    deaths: dict[ClassKey, dict[int, tuple[str, "str | ClassKey | tuple"]]] = {}
    index = page._index

    def claim(elt: Element, inst: DifferentialInstance) -> None:
        prev = by_element.get(elt)
        if prev is not None:
            raise DoubleAssignmentError(
                f"element {('2*' if elt[1] == 2 else '') + str(elt[0])} assigned "
                f"twice: [{prev.citation}] and [{inst.citation}]")
        by_element[elt] = inst

    for inst in instances:
        if inst.r != page.r:
            raise BidegreeLawError(
                f"instance of length {inst.r} applied on page {page.r} "
                f"[{inst.citation}]")
        skey, smult = inst.source
        shit = index.get(skey)
        if shit is None:
            raise DeadEndpointError(f"dead source {skey} [{inst.citation}]")
        spos, ssum = shit
        if smult not in ssum.live_mults():
            raise DeadEndpointError(
                f"element {'2*' if smult == 2 else ''}{skey} not live "
                f"[{inst.citation}]")
        if ssum.order == ORDER_FREE and smult == 2:
            raise InvalidTargetError(
                f"2g of a free summand never fires here [{inst.citation}]")
        claim(inst.source, inst)

        if inst.target is not None:
            tkey, tmult = inst.target
            thit = index.get(tkey)
            if thit is None:
                raise DeadEndpointError(f"dead target {tkey} [{inst.citation}]")
            tpos, tsum = thit
            if tmult not in tsum.live_mults():
                raise DeadEndpointError(
                    f"element {'2*' if tmult == 2 else ''}{tkey} not live "
                    f"[{inst.citation}]")
            if tsum.order == ORDER_FOUR and tmult != 2:
                raise InvalidTargetError(
                    f"generator of a Z/4 cannot be a target [{inst.citation}]")
            if tsum.order == ORDER_FREE:
                raise InvalidTargetError(
                    f"free summand cannot be a target [{inst.citation}]")
            inst.check_bidegree(spos, tpos)
            claim(inst.target, inst)
            deaths.setdefault(tkey, {})[tmult] = ("target", inst.source, inst.citation)
            deaths.setdefault(skey, {})[smult] = ("source", inst.target, inst.citation)
        else:
            deaths.setdefault(skey, {})[smult] = (
                "source", inst.target_label or OUT_OF_WINDOW, inst.citation)

    new_table = dict(page.table)
    new_index = dict(index)
    new_ledger = dict(page.ledger)
    by_pos: dict[Bidegree, list[ClassKey]] = {}
    for key in deaths:
        by_pos.setdefault(index[key][0], []).append(key)
    for pos, keys in by_pos.items():
        out = []
        for s in new_table[pos]:
            died = deaths.get(s.key)
            if not died:
                out.append(s)
                continue
            for mult, (role, partner, citation) in died.items():
                lkey = (s.key, mult)
                if lkey in new_ledger:
                    raise DoubleAssignmentError(
                        f"ledger entry for {s.key} (mult {mult}) would be "
                        f"overwritten")
                if not isinstance(partner, str):
                    pk, pm = partner
                    partner = ("2*" if pm == 2 else "") + str(pk)
                new_ledger[lkey] = LedgerEntry(page.r, partner, role,
                                               pos[0], pos[1], citation)
            survivor = _survivor(s, set(died))
            if survivor is not None:
                out.append(survivor)
                new_index[s.key] = (pos, survivor)
            else:
                del new_index[s.key]
        if out:
            new_table[pos] = tuple(out)
        else:
            del new_table[pos]
    return Page(next_r, new_table, new_ledger, _index=new_index)


def _survivor(s: Summand, died_mults: set[int]) -> Summand | None:
    if s.order == ORDER_FOUR:
        if died_mults == {1}:
            return replace(s, order=ORDER_TWO, index2=True)
        if died_mults == {2}:
            return replace(s, order=ORDER_TWO)
        return None  # both levels died
    if s.order == ORDER_FREE:
        if died_mults == {1}:
            return replace(s, index2=True)
        raise InvalidTargetError(f"free summand {s.key} lost an impossible element")
    return None  # order two: its one live element died


def turn_page(page: Page, next_r: int, final: bool = False) -> Page:
    """A no-op turn: identical content at the next index."""
    return Page(next_r, page.table, page.ledger, final=final, _index=page._index)


def truncate_below_filtration(page: Page, s_min) -> Page:
    """Remove classes with filtration < s_min; ledger entries for classes
    at filtration >= s_min are preserved.  s_min = None is the identity."""
    if s_min is None:
        return page
    table = {pos: ss for pos, ss in page.table.items() if pos[1] >= s_min}
    ledger = {k: e for k, e in page.ledger.items() if e.filt >= s_min}
    return Page(page.r, table, ledger, final=page.final)


# ---------------------------------------------------------------------------
# Windows


@dataclass(frozen=True)
class Window:
    """An inner assertion window plus padding.  Differentials are run on
    the padded region so that boundary deaths are never falsified; all
    assertions and reports restrict to the inner window.

    Padding may be asymmetric: killer chains descend in filtration by the
    sum of the firing lengths while stems only drift by one per page, so
    a run can pad far below without paying for the full square.
    """

    stem_min: int
    stem_max: int
    filt_min: int
    filt_max: int
    pad: int = 0
    pad_stem_lo: int | None = None
    pad_stem_hi: int | None = None
    pad_filt_lo: int | None = None
    pad_filt_hi: int | None = None

    def _pads(self) -> tuple[int, int, int, int]:
        d = self.pad
        return (self.pad_stem_lo if self.pad_stem_lo is not None else d,
                self.pad_stem_hi if self.pad_stem_hi is not None else d,
                self.pad_filt_lo if self.pad_filt_lo is not None else d,
                self.pad_filt_hi if self.pad_filt_hi is not None else d)

    @classmethod
    def stems(cls, stem_max: int, pad: int = 0, stem_min: int = 0,
              filt_bound: int | None = None, **pads) -> "Window":
        fb = filt_bound if filt_bound is not None else stem_max + 4
        return cls(stem_min, stem_max, -fb, fb, pad, **pads)

    def in_inner(self, pos: Bidegree) -> bool:
        return (self.stem_min <= pos[0] <= self.stem_max
                and self.filt_min <= pos[1] <= self.filt_max)

    def in_padded(self, pos: Bidegree) -> bool:
        sl, sh, fl, fh = self._pads()
        return (self.stem_min - sl <= pos[0] <= self.stem_max + sh
                and self.filt_min - fl <= pos[1] <= self.filt_max + fh)

    @property
    def padded_stem_max(self) -> int:
        return self.stem_max + self._pads()[1]

    @property
    def padded_stem_min(self) -> int:
        return self.stem_min - self._pads()[0]

    @property
    def padded_filt_max(self) -> int:
        return self.filt_max + self._pads()[3]

    @property
    def padded_filt_min(self) -> int:
        return self.filt_min - self._pads()[2]
