"""Declarative transmission schemes and their exact DoF calculus.

A scheme is data: per slot, the superposed symbol layers (power exponent,
payload prefactor, beam constraint, provenance) and per user an ordered
successive-cancellation decode plan.  Digitized side information --
overheard interference that a later common symbol re-delivers -- is
declared explicitly, which is what makes retransmission-style protocols
checkable without replaying a full joint decoder.

The validator enforces three exact rules for every quality exponent
``a`` in [0, 1]:

* gap rule -- a decode group (one or more steps, possibly spanning
  slots) may carry at most the sum of its per-slot capacities plus the
  payloads of the digitized equations it references.  Per-slot capacity
  is the top member exponent minus the interference floor, the floor
  being the largest effective exponent among not-yet-cancelled
  non-member layers (never below the unit noise, exponent 0).  A layer
  zero-forced toward its observer with quality-``a`` estimates keeps
  ``exponent - a`` of its power; all other beams leak at full power.
* side-info closure -- every overheard term a user needs is contained in
  some digitized common symbol destined to that user with at least the
  term's payload.
* budget -- no slot exceeds power exponent 1.

All checks are piecewise-affine in ``a``; evaluating at segment
breakpoints (crossings of the affine forms involved) plus the interval
endpoints is exact, no sampling tolerance is involved.

DoF accounting then counts each fresh-message payload once, divided by
the slot count; digitized symbols recycle earlier payloads and
contribute nothing new.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .alphapoly import ALPHA, AffineAlpha, as_fraction, format_fraction

SCHEMA_VERSION = 1


class InvalidScheme(Exception):
    """DoF was requested for a scheme that fails validation."""


class UnsupportedK(Exception):
    """A builder was asked for a user count outside its supported range."""


# ---------------------------------------------------------------------------
# Scheme data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BeamConstraint:
    """How one symbol layer is steered.

    kinds:
      canonical            -- basis vector on a fixed antenna
      null_of              -- unit vector nulling the estimated rows of `users`
      span_of              -- unit vector along the estimated row of `user`
      full_rank_combiner   -- fixed published coefficient on `antenna`;
                              the (slot-within-tag, position) entry of the
                              combiner matrix scales this layer
    """

    kind: str
    antenna: int = 0
    users: frozenset = frozenset()
    user: int = -1
    tag: str = ""
    position: int = 0

    def to_doc(self) -> dict:
        if self.kind == "canonical":
            return {"kind": "canonical", "antenna": self.antenna}
        if self.kind == "null_of":
            return {"kind": "null_of", "users": sorted(self.users)}
        if self.kind == "span_of":
            return {"kind": "span_of", "user": self.user}
        if self.kind == "full_rank_combiner":
            return {
                "kind": "full_rank_combiner",
                "tag": self.tag,
                "antenna": self.antenna,
                "position": self.position,
            }
        raise ValueError(f"unknown beam kind {self.kind}")

    @staticmethod
    def from_doc(doc: dict) -> "BeamConstraint":
        kind = doc["kind"]
        if kind == "canonical":
            return canonical(doc["antenna"])
        if kind == "null_of":
            return null_of(doc["users"])
        if kind == "span_of":
            return span_of(doc["user"])
        if kind == "full_rank_combiner":
            return combiner(doc["tag"], doc["antenna"], doc["position"])
        raise ValueError(f"unknown beam kind {kind}")


def canonical(antenna: int) -> BeamConstraint:
    return BeamConstraint(kind="canonical", antenna=antenna)


def null_of(users: Iterable[int]) -> BeamConstraint:
    return BeamConstraint(kind="null_of", users=frozenset(users))


def span_of(user: int) -> BeamConstraint:
    return BeamConstraint(kind="span_of", user=user)


def combiner(tag: str, antenna: int, position: int) -> BeamConstraint:
    return BeamConstraint(
        kind="full_rank_combiner", tag=tag, antenna=antenna, position=position
    )


@dataclass(frozen=True)
class SymbolSource:
    """Where a symbol's content comes from."""

    kind: str  # "fresh_message" | "digitized_interference"
    user: int = -1
    terms: Tuple[str, ...] = ()

    def to_doc(self) -> dict:
        if self.kind == "fresh_message":
            return {"kind": "fresh_message", "user": self.user}
        return {"kind": "digitized_interference", "terms": list(self.terms)}

    @staticmethod
    def from_doc(doc: dict) -> "SymbolSource":
        if doc["kind"] == "fresh_message":
            return fresh_message(doc["user"])
        return digitized_interference(doc["terms"])


def fresh_message(user: int) -> SymbolSource:
    return SymbolSource(kind="fresh_message", user=user)


def digitized_interference(terms: Iterable[str]) -> SymbolSource:
    return SymbolSource(kind="digitized_interference", terms=tuple(terms))


@dataclass(frozen=True)
class SymbolDecl:
    """One transmitted layer: a scalar symbol with power, rate and beam."""

    id: str
    order: int
    dest: frozenset
    power_exp: AffineAlpha
    payload: AffineAlpha
    beam: BeamConstraint
    source: SymbolSource

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "order": self.order,
            "dest": sorted(self.dest),
            "power_exp": self.power_exp.to_doc(),
            "payload": self.payload.to_doc(),
            "beam": self.beam.to_doc(),
            "source": self.source.to_doc(),
        }

    @staticmethod
    def from_doc(doc: dict) -> "SymbolDecl":
        return SymbolDecl(
            id=doc["id"],
            order=doc["order"],
            dest=frozenset(doc["dest"]),
            power_exp=AffineAlpha.from_doc(doc["power_exp"]),
            payload=AffineAlpha.from_doc(doc["payload"]),
            beam=BeamConstraint.from_doc(doc["beam"]),
            source=SymbolSource.from_doc(doc["source"]),
        )


@dataclass(frozen=True)
class DecodeStep:
    """One successive-cancellation step of one user in one slot.

    joint=False decodes the members individually (demand = sum of member
    payloads, counted once per symbol across a multi-slot group);
    joint=True decodes only the observed linear combination (demand =
    largest member payload) -- the cancel-and-move-on step of a user the
    content is not destined to.

    side_info lists digitized term ids whose delivered payload this
    user's decode leans on; also_cancels marks symbols whose content
    this step reveals as a by-product (a digitization of the very
    combination just decoded).
    """

    symbols: Tuple[str, ...]
    joint: bool = False
    group: Optional[str] = None
    side_info: Tuple[str, ...] = ()
    also_cancels: Tuple[str, ...] = ()

    def to_doc(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "joint": self.joint,
            "group": self.group,
            "side_info": list(self.side_info),
            "also_cancels": list(self.also_cancels),
        }

    @staticmethod
    def from_doc(doc: dict) -> "DecodeStep":
        return DecodeStep(
            symbols=tuple(doc["symbols"]),
            joint=doc.get("joint", False),
            group=doc.get("group"),
            side_info=tuple(doc.get("side_info", ())),
            also_cancels=tuple(doc.get("also_cancels", ())),
        )


@dataclass(frozen=True)
class SlotDecl:
    """Symbols on the air in one slot plus every user's decode steps."""

    slot_index: int
    symbols: Tuple[SymbolDecl, ...]
    decode_plan: Mapping[int, Tuple[DecodeStep, ...]]

    def to_doc(self) -> dict:
        return {
            "slot_index": self.slot_index,
            "symbols": [s.to_doc() for s in self.symbols],
            "decode_plan": {
                str(u): [st.to_doc() for st in steps]
                for u, steps in sorted(self.decode_plan.items())
            },
        }

    @staticmethod
    def from_doc(doc: dict) -> "SlotDecl":
        return SlotDecl(
            slot_index=doc["slot_index"],
            symbols=tuple(SymbolDecl.from_doc(s) for s in doc["symbols"]),
            decode_plan={
                int(u): tuple(DecodeStep.from_doc(st) for st in steps)
                for u, steps in doc["decode_plan"].items()
            },
        )


@dataclass(frozen=True)
class SideInfoTerm:
    """An overheard interference combination somebody later needs.

    `observer` heard, in `slot_index`, the combination of the listed
    transmitted symbols; the term carries `payload` worth of rate and is
    needed by the users in `needed_by` (for equation building or
    interference cleanup -- both consume the same digitized content).
    """

    term: str
    slot_index: int
    observer: int
    needed_by: frozenset
    payload: AffineAlpha
    symbols: Tuple[str, ...]

    def to_doc(self) -> dict:
        return {
            "term": self.term,
            "slot_index": self.slot_index,
            "observer": self.observer,
            "needed_by": sorted(self.needed_by),
            "payload": self.payload.to_doc(),
            "symbols": list(self.symbols),
        }

    @staticmethod
    def from_doc(doc: dict) -> "SideInfoTerm":
        return SideInfoTerm(
            term=doc["term"],
            slot_index=doc["slot_index"],
            observer=doc["observer"],
            needed_by=frozenset(doc["needed_by"]),
            payload=AffineAlpha.from_doc(doc["payload"]),
            symbols=tuple(doc["symbols"]),
        )


@dataclass(frozen=True)
class SchemeSpec:
    """A complete multi-slot transmission scheme."""

    name: str
    K: int
    N: int
    slots: Tuple[SlotDecl, ...]
    side_info: Tuple[SideInfoTerm, ...] = ()
    round_robin_users: Optional[int] = None
    csit_perfect: bool = False

    @property
    def slot_count(self) -> int:
        return len(self.slots)

    def symbol_table(self) -> Dict[str, SymbolDecl]:
        """First declaration of every symbol id (retransmissions repeat ids)."""
        table: Dict[str, SymbolDecl] = {}
        for slot in self.slots:
            for sym in slot.symbols:
                table.setdefault(sym.id, sym)
        return table

    def term_table(self) -> Dict[str, SideInfoTerm]:
        return {t.term: t for t in self.side_info}

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "K": self.K,
            "N": self.N,
            "round_robin_users": self.round_robin_users,
            "csit_perfect": self.csit_perfect,
            "slots": [s.to_doc() for s in self.slots],
            "side_info": [t.to_doc() for t in self.side_info],
        }

    @staticmethod
    def from_doc(doc: dict) -> "SchemeSpec":
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version!r}")
        return SchemeSpec(
            name=doc["name"],
            K=doc["K"],
            N=doc["N"],
            slots=tuple(SlotDecl.from_doc(s) for s in doc["slots"]),
            side_info=tuple(SideInfoTerm.from_doc(t) for t in doc.get("side_info", ())),
            round_robin_users=doc.get("round_robin_users"),
            csit_perfect=doc.get("csit_perfect", False),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), indent=2, sort_keys=False)

    @staticmethod
    def loads(text: str) -> "SchemeSpec":
        return SchemeSpec.from_doc(json.loads(text))


# ---------------------------------------------------------------------------
# Effective exponents
# ---------------------------------------------------------------------------


def effective_exponent(
    sym: SymbolDecl, user: int, csit_perfect: bool = False
) -> Optional[AffineAlpha]:
    """Received power exponent of a layer at one user.

    Zero-forcing against quality-``a`` estimates attenuates by exactly
    ``a`` (leakage power P**(e-a)); with the perfect-CSIT flag the layer
    vanishes entirely at nulled users (returns None).  Span and fixed
    beams do not attenuate anybody.
    """
    if sym.beam.kind == "null_of" and user in sym.beam.users:
        if csit_perfect:
            return None
        return sym.power_exp - ALPHA
    return sym.power_exp


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str  # "structure" | "budget" | "gap" | "side_info"
    slot: Optional[int]
    user: Optional[int]
    detail: str
    witnesses: Tuple[Fraction, ...] = ()

    def __str__(self) -> str:
        where = []
        if self.slot is not None:
            where.append(f"slot {self.slot}")
        if self.user is not None:
            where.append(f"user {self.user}")
        loc = " @ " + ", ".join(where) if where else ""
        wit = (
            "  [a = " + ", ".join(format_fraction(w) for w in self.witnesses) + "]"
            if self.witnesses
            else ""
        )
        return f"{self.rule}{loc}: {self.detail}{wit}"


@dataclass(frozen=True)
class ValidationReport:
    scheme: str
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return f"{self.scheme}: valid"
        lines = [f"{self.scheme}: {len(self.violations)} violation(s)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


_BASE_GRID = (Fraction(0), Fraction(1, 2), Fraction(1))

# An affine form as a plain (c0, c1) tuple; the checker deduplicates on
# these because schemes reuse a handful of exponent/payload shapes
# thousands of times.
_Form = Tuple[Fraction, Fraction]
_ZERO_FORM: _Form = (Fraction(0), Fraction(0))


def _form(f: AffineAlpha) -> _Form:
    return (f.c0, f.c1)


def _candidate_alphas(forms: Iterable[_Form]) -> list[Fraction]:
    """Endpoints, midpoint, and all crossings of the given affine forms.

    Between consecutive candidates every max/min of the forms is plain
    affine, so checking a piecewise-affine inequality at the candidates
    is an exact proof over the whole interval.
    """
    pool = set(forms)
    pool.add(_ZERO_FORM)
    pool = list(pool)
    points = set(_BASE_GRID)
    for i in range(len(pool)):
        c0i, c1i = pool[i]
        for j in range(i + 1, len(pool)):
            c0j, c1j = pool[j]
            if c1i == c1j:
                continue
            x = (c0j - c0i) / (c1i - c1j)
            if 0 < x < 1:
                points.add(x)
    return sorted(points)


class _GroupCheck:
    """Accumulated demand/capacity data for one decode group of one user."""

    __slots__ = ("first_slot", "full_payload", "joint_steps", "steps", "ref_payload")

    def __init__(self, first_slot: int):
        self.first_slot = first_slot
        self.full_payload: Dict[_Form, int] = {}
        self.joint_steps: list[frozenset] = []
        # per step: (member effective-exponent forms, floor forms)
        self.steps: list[tuple[frozenset, frozenset]] = []
        self.ref_payload: Dict[_Form, int] = {}


_VALIDATION_MEMO: Dict[int, tuple] = {}


def validate(scheme: SchemeSpec) -> ValidationReport:
    """Run all structural and rate checks; never raises on typed input."""
    import weakref

    memo = _VALIDATION_MEMO.get(id(scheme))
    if memo is not None and memo[0]() is scheme:
        return memo[1]

    violations: list[Violation] = []
    violations += _check_structure(scheme)
    if not any(v.rule == "structure" for v in violations):
        # The rate walk assumes referential integrity.
        violations += _check_budget(scheme)
        violations += _check_gap_rule(scheme)
    violations += _check_side_info_closure(scheme)
    report = ValidationReport(scheme=scheme.name, violations=tuple(violations))
    try:
        _VALIDATION_MEMO[id(scheme)] = (weakref.ref(scheme), report)
    except TypeError:
        pass
    return report


def _check_structure(scheme: SchemeSpec) -> list[Violation]:
    out: list[Violation] = []
    add = lambda slot, user, msg: out.append(
        Violation("structure", slot, user, msg)
    )

    if scheme.slot_count < 1:
        add(None, None, "scheme has no slots")
        return out
    if scheme.round_robin_users is not None and scheme.round_robin_users != scheme.K:
        add(None, None, "round_robin_users must equal K when set")

    terms = scheme.term_table()
    if len(terms) != len(scheme.side_info):
        add(None, None, "duplicate side-info term ids")

    seen: Dict[str, SymbolDecl] = {}
    prev_index = 0
    for slot in scheme.slots:
        t = slot.slot_index
        if t <= prev_index:
            add(t, None, "slot indices must be strictly increasing and >= 1")
        prev_index = t

        ids_here = set()
        for sym in slot.symbols:
            if sym.id in ids_here:
                add(t, None, f"symbol {sym.id} declared twice in one slot")
            ids_here.add(sym.id)
            prev = seen.get(sym.id)
            if prev is not None:
                if prev is not sym and prev != sym:
                    add(t, None, f"retransmitted symbol {sym.id} redeclared differently")
                continue  # field checks already ran for this declaration
            seen[sym.id] = sym

            if not sym.dest or not all(0 <= u < scheme.K for u in sym.dest):
                add(t, None, f"symbol {sym.id}: dest must be a nonempty subset of users")
            if sym.order != len(sym.dest):
                add(t, None, f"symbol {sym.id}: order {sym.order} != |dest| {len(sym.dest)}")
            if not sym.power_exp.is_nonneg_on_unit() or not (
                AffineAlpha.const(1) - sym.power_exp
            ).is_nonneg_on_unit():
                add(t, None, f"symbol {sym.id}: power exponent outside [0, 1]")
            if not sym.payload.is_nonneg_on_unit():
                add(t, None, f"symbol {sym.id}: negative payload")
            b = sym.beam
            if b.kind == "canonical" and not 0 <= b.antenna < scheme.N:
                add(t, None, f"symbol {sym.id}: antenna {b.antenna} out of range")
            if b.kind == "null_of":
                if len(b.users) >= scheme.N:
                    add(t, None, f"symbol {sym.id}: null set size must stay below N")
                if not all(0 <= u < scheme.K for u in b.users):
                    add(t, None, f"symbol {sym.id}: null set names unknown users")
            if b.kind == "span_of" and not 0 <= b.user < scheme.K:
                add(t, None, f"symbol {sym.id}: span user out of range")
            if b.kind == "full_rank_combiner" and not 0 <= b.antenna < scheme.N:
                add(t, None, f"symbol {sym.id}: combiner antenna out of range")
            if sym.source.kind == "fresh_message":
                if sym.dest != frozenset({sym.source.user}):
                    add(t, None, f"symbol {sym.id}: fresh message dest must be its user")
            else:
                for term in sym.source.terms:
                    if term not in terms:
                        add(t, None, f"symbol {sym.id}: undeclared term {term}")

        for user, steps in slot.decode_plan.items():
            if not 0 <= user < scheme.K:
                add(t, user, "decode plan for unknown user")
                continue
            for st in steps:
                for sid in st.symbols:
                    if sid not in ids_here:
                        add(t, user, f"decode step names {sid}, absent from this slot")
                for ref in st.side_info:
                    if ref not in terms:
                        add(t, user, f"decode step references undeclared term {ref}")
                    elif user not in terms[ref].needed_by:
                        add(t, user, f"term {ref} is not declared as needed by this user")

    all_ids = set(seen)
    for slot in scheme.slots:
        for user, steps in slot.decode_plan.items():
            for st in steps:
                for sid in st.also_cancels:
                    if sid not in all_ids:
                        add(slot.slot_index, user, f"also_cancels names unknown symbol {sid}")
    for term in scheme.side_info:
        for sid in term.symbols:
            if sid not in all_ids:
                add(term.slot_index, None, f"term {term.term} references unknown symbol {sid}")
        if not all(0 <= u < scheme.K for u in term.needed_by):
            add(term.slot_index, None, f"term {term.term}: needed_by names unknown users")
    return out


def _check_budget(scheme: SchemeSpec) -> list[Violation]:
    out = []
    for slot in scheme.slots:
        if not slot.symbols:
            continue
        forms = {_form(s.power_exp) for s in slot.symbols}
        # Affine maxima peak at the endpoints.
        bad = [
            a
            for a in _BASE_GRID
            if max(c0 + c1 * a for c0, c1 in forms) > 1
        ]
        if bad:
            out.append(
                Violation(
                    "budget",
                    slot.slot_index,
                    None,
                    "slot power exponent exceeds 1",
                    tuple(bad),
                )
            )
    return out


class _FormPool:
    """Interns affine forms as small integers.

    Builders reuse a handful of shared AffineAlpha objects, so keying by
    object identity first avoids nearly all Fraction hashing; distinct
    objects with equal values still collapse to one id.
    """

    def __init__(self):
        self.forms: list[_Form] = [_ZERO_FORM]
        self._by_value: Dict[_Form, int] = {_ZERO_FORM: 0}
        self._by_obj: Dict[int, int] = {}
        self._keepalive: list = []
        self._shifted: Dict[int, int] = {}

    def intern(self, f: AffineAlpha) -> int:
        fid = self._by_obj.get(id(f))
        if fid is None:
            value = (f.c0, f.c1)
            fid = self._by_value.get(value)
            if fid is None:
                fid = len(self.forms)
                self.forms.append(value)
                self._by_value[value] = fid
            self._by_obj[id(f)] = fid
            self._keepalive.append(f)
        return fid

    def shifted_down(self, fid: int) -> int:
        """Form id of (c0, c1 - 1): the quality-limited null leakage."""
        out = self._shifted.get(fid)
        if out is None:
            c0, c1 = self.forms[fid]
            value = (c0, c1 - 1)
            out = self._by_value.get(value)
            if out is None:
                out = len(self.forms)
                self.forms.append(value)
                self._by_value[value] = out
            self._shifted[fid] = out
        return out

    ZERO = 0


def _check_gap_rule(scheme: SchemeSpec) -> list[Violation]:
    out: list[Violation] = []
    terms = scheme.term_table()
    pool = _FormPool()
    # Identical group structures repeat across users and slots; memoize
    # the exact check per structural signature.
    verdicts: Dict[tuple, tuple] = {}

    for user in range(scheme.K):
        cancelled: set[str] = set()
        groups: dict = {}
        order: list = []
        counted_members: dict = {}
        counted_refs: dict = {}

        for slot in scheme.slots:
            steps = slot.decode_plan.get(user, ())
            if not steps:
                continue
            decls = {s.id: s for s in slot.symbols}
            effs: Dict[str, Optional[int]] = {}
            for s in slot.symbols:
                base = pool.intern(s.power_exp)
                if s.beam.kind == "null_of" and user in s.beam.users:
                    effs[s.id] = (
                        None if scheme.csit_perfect else pool.shifted_down(base)
                    )
                else:
                    effs[s.id] = base
            for idx, st in enumerate(steps):
                key = ("g", st.group) if st.group else ("s", slot.slot_index, idx)
                if key not in groups:
                    groups[key] = _GroupCheck(slot.slot_index)
                    order.append(key)
                    counted_members[key] = set()
                    counted_refs[key] = set()
                g = groups[key]

                members = set(st.symbols)
                member_forms = frozenset(
                    effs[m] if effs[m] is not None else _FormPool.ZERO
                    for m in st.symbols
                )
                floor_forms = frozenset(
                    e
                    for sid, e in effs.items()
                    if sid not in members and sid not in cancelled and e is not None
                )
                g.steps.append((member_forms, floor_forms))
                if st.joint:
                    g.joint_steps.append(
                        frozenset(pool.intern(decls[m].payload) for m in st.symbols)
                    )
                else:
                    for m in st.symbols:
                        if m not in counted_members[key]:
                            counted_members[key].add(m)
                            f = pool.intern(decls[m].payload)
                            g.full_payload[f] = g.full_payload.get(f, 0) + 1
                for ref in st.side_info:
                    if ref not in counted_refs[key]:
                        counted_refs[key].add(ref)
                        f = pool.intern(terms[ref].payload)
                        g.ref_payload[f] = g.ref_payload.get(f, 0) + 1

                cancelled.update(members)
                cancelled.update(st.also_cancels)

        for key in order:
            g = groups[key]
            signature = (
                frozenset(g.full_payload.items()),
                tuple(sorted(tuple(sorted(fs)) for fs in g.joint_steps)),
                tuple(
                    sorted(
                        (tuple(sorted(mf)), tuple(sorted(ff)))
                        for mf, ff in g.steps
                    )
                ),
                frozenset(g.ref_payload.items()),
            )
            bad = verdicts.get(signature)
            if bad is None:
                bad = _check_group(g, pool)
                verdicts[signature] = bad
            if bad:
                label = key[1] if key[0] == "g" else "step"
                out.append(
                    Violation(
                        "gap",
                        g.first_slot,
                        user,
                        f"decode payload exceeds capacity ({label})",
                        tuple(bad),
                    )
                )
    return out


def _check_group(g: _GroupCheck, pool: _FormPool) -> tuple:
    """Exact demand <= capacity check; returns the violated alphas."""
    used: set[int] = set()
    for member_forms, floor_forms in g.steps:
        used |= member_forms | floor_forms
    used.update(g.full_payload)
    used.update(g.ref_payload)
    for forms in g.joint_steps:
        used |= forms
    bad = []
    zero = Fraction(0)
    for a in _candidate_alphas(pool.forms[f] for f in used):
        val = {f: pool.forms[f][0] + pool.forms[f][1] * a for f in used}
        val[_FormPool.ZERO] = zero
        demand = sum((val[f] * n for f, n in g.full_payload.items()), zero)
        demand += sum(
            (max(val[f] for f in forms) for forms in g.joint_steps), zero
        )
        bound = sum((val[f] * n for f, n in g.ref_payload.items()), zero)
        for member_forms, floor_forms in g.steps:
            top = max(val[f] for f in member_forms)
            floor = zero
            for f in floor_forms:
                v = val[f]
                if v > floor:
                    floor = v
            bound += top - floor
        if demand > bound:
            bad.append(a)
    return tuple(bad)


def _check_side_info_closure(scheme: SchemeSpec) -> list[Violation]:
    out = []
    table = scheme.symbol_table()
    carriers: dict[str, list[SymbolDecl]] = {}
    for sym in table.values():
        if sym.source.kind == "digitized_interference":
            for term in sym.source.terms:
                carriers.setdefault(term, []).append(sym)

    for term in scheme.side_info:
        for user in sorted(term.needed_by):
            ok = any(
                user in sym.dest
                and (sym.payload - term.payload).is_nonneg_on_unit()
                for sym in carriers.get(term.term, ())
            )
            if not ok:
                out.append(
                    Violation(
                        "side_info",
                        term.slot_index,
                        user,
                        f"term {term.term} is never delivered to this user",
                    )
                )
    return out


# ---------------------------------------------------------------------------
# DoF accounting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DofResult:
    per_user: Tuple[AffineAlpha, ...]
    total: AffineAlpha
    slot_count: int

    def __str__(self) -> str:
        users = ", ".join(str(d) for d in self.per_user)
        return f"per-user ({users}); total {self.total} over {self.slot_count} slots"


def dof_symbolic(scheme: SchemeSpec, *, check: bool = True) -> DofResult:
    """Exact per-user DoF as affine functions of the quality exponent.

    Fresh-message payloads count once each (retransmissions share one
    id); digitized symbols recycle already-counted payloads.  Schemes
    flagged round-robin are averaged over their user rotations, which is
    how their single canonical pass realizes a symmetric operating
    point.
    """
    if check:
        report = validate(scheme)
        if not report.ok:
            raise InvalidScheme(str(report))

    raw = [AffineAlpha.const(0) for _ in range(scheme.K)]
    for sym in scheme.symbol_table().values():
        if sym.source.kind == "fresh_message":
            raw[sym.source.user] = raw[sym.source.user] + sym.payload

    n = scheme.slot_count
    per_user = [p / n for p in raw]
    if scheme.round_robin_users is not None:
        mean = sum(per_user, AffineAlpha.const(0)) / scheme.K
        per_user = [mean] * scheme.K
    total = sum(per_user, AffineAlpha.const(0))
    return DofResult(per_user=tuple(per_user), total=total, slot_count=n)


def dof_at(scheme: SchemeSpec, quality, *, check: bool = True) -> list[Fraction]:
    """Exact per-user DoF at one rational quality exponent."""
    alpha = getattr(quality, "alpha", quality)
    result = dof_symbolic(scheme, check=check)
    return [d.at(as_fraction(alpha)) for d in result.per_user]


# ---------------------------------------------------------------------------
# User relabeling (rotations, permutation-equivariance checks)
# ---------------------------------------------------------------------------


def permute_users(scheme: SchemeSpec, perm: Sequence[int]) -> SchemeSpec:
    """Relabel users: old user u becomes perm[u].  Structure is preserved."""
    if sorted(perm) != list(range(scheme.K)):
        raise ValueError("perm must be a permutation of range(K)")

    def p_set(users) -> frozenset:
        return frozenset(perm[u] for u in users)

    def p_beam(b: BeamConstraint) -> BeamConstraint:
        if b.kind == "null_of":
            return null_of(p_set(b.users))
        if b.kind == "span_of":
            return span_of(perm[b.user])
        return b

    def p_sym(s: SymbolDecl) -> SymbolDecl:
        src = s.source
        if src.kind == "fresh_message":
            src = fresh_message(perm[src.user])
        return replace(s, dest=p_set(s.dest), beam=p_beam(s.beam), source=src)

    slots = tuple(
        SlotDecl(
            slot_index=slot.slot_index,
            symbols=tuple(p_sym(s) for s in slot.symbols),
            decode_plan={perm[u]: steps for u, steps in slot.decode_plan.items()},
        )
        for slot in scheme.slots
    )
    side_info = tuple(
        replace(t, observer=perm[t.observer], needed_by=p_set(t.needed_by))
        for t in scheme.side_info
    )
    return replace(scheme, slots=slots, side_info=side_info)
