"""Builders for the built-in transmission schemes.

Five families plus baselines:

* ``x1``   -- 3 users, 3 antennas, 11 slots, three phases; the symmetric
  operating point that blends retransmission of overheard interference
  with quality-limited zero-forcing.
* ``x2``   -- one slot, 3 users; one user is served a full-power stream
  while everybody also gets a zero-forced private symbol.
* ``x3``   -- the K-user generalization of ``x1``: a multiphase
  retransmission schedule with harmonic phase durations carrying
  reduced-rate symbols at full power, with K zero-forced privates
  superposed in every slot.
* ``x4``   -- the K-user generalization of ``x2``.
* ``x5``   -- 3 users on 2 antennas, 8 slots; pairwise span/null serving
  with digitized interference exchange.
* ``mat``  -- the pure delayed-CSIT schedule (``x3`` without the
  zero-forcing part, full-rate symbols).
* ``zf``   -- one-slot zero-forcing, quality-limited unless the
  perfect-CSIT flag is set.
* ``tdma`` -- round-robin single-user slots, no CSIT needed.

Builders are deterministic and return immutable SchemeSpec values; the
heavier ones are memoized.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from .alphapoly import ALPHA, ONE, ONE_MINUS_ALPHA, AffineAlpha
from .dofcalc import (
    DecodeStep,
    SchemeSpec,
    SideInfoTerm,
    SlotDecl,
    SymbolDecl,
    UnsupportedK,
    canonical,
    combiner,
    digitized_interference,
    fresh_message,
    null_of,
    span_of,
)

MAX_USERS = 8


def harmonic(K: int) -> Fraction:
    """Exact harmonic number 1 + 1/2 + ... + 1/K."""
    return sum((Fraction(1, j) for j in range(1, K + 1)), Fraction(0))


def _zf_private(user: int, K: int, slot: int, prefix: str = "p") -> SymbolDecl:
    others = frozenset(range(K)) - {user}
    return SymbolDecl(
        id=f"{prefix}{user}t{slot}",
        order=1,
        dest=frozenset({user}),
        power_exp=ALPHA,
        payload=ALPHA,
        beam=null_of(others),
        source=fresh_message(user),
    )


# ---------------------------------------------------------------------------
# x1: 3 users, 3 antennas, 11 slots
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def build_x1() -> SchemeSpec:
    """Three-phase symmetric scheme for K = N = 3 over 11 slots.

    Phase 1 (slots 1-6, two rounds): each slot sends one user a
    three-symbol full-power vector at reduced rate plus three zero-forced
    privates.  Phase 2 (slots 7-9) delivers the digitized pairwise
    overheard interference, two pair symbols per slot on separate
    antennas.  Phase 3 (slots 10-11) sends two fixed full-rank linear
    combinations of the three third-order digitizations; every user
    already holds the one digitized from its own observation.
    """
    K = 3
    slots = []
    side_info = []

    # Phase 1: rounds r = 0, 1; owner u transmits in slot 3*r + u + 1.
    for t in range(1, 7):
        r, u = divmod(t - 1, 3)
        vec = [
            SymbolDecl(
                id=f"s{u}r{r}k{k}",
                order=1,
                dest=frozenset({u}),
                power_exp=ONE,
                payload=ONE_MINUS_ALPHA,
                beam=canonical(k),
                source=fresh_message(u),
            )
            for k in range(3)
        ]
        privates = [_zf_private(w, K, t) for w in range(K)]
        vec_ids = tuple(s.id for s in vec)
        terms_here = []
        for v in range(K):
            if v == u:
                continue
            term = SideInfoTerm(
                term=f"ovh{t}u{v}",
                slot_index=t,
                observer=v,
                needed_by=frozenset({u}),
                payload=ONE_MINUS_ALPHA,
                symbols=vec_ids,
            )
            side_info.append(term)
            terms_here.append(term.term)
        plan = {}
        for w in range(K):
            first = DecodeStep(
                symbols=vec_ids,
                joint=(w != u),
                side_info=tuple(terms_here) if w == u else (),
            )
            plan[w] = (first, DecodeStep(symbols=(f"p{w}t{t}",)))
        slots.append(SlotDecl(slot_index=t, symbols=tuple(vec + privates), decode_plan=plan))

    # Phase 2: slots 7-9 carry the pair digitizations, one pair per slot.
    pairs = [(0, 1), (0, 2), (1, 2)]
    pair_slot = {}
    for offset, (i, j) in enumerate(pairs):
        t = 7 + offset
        pair_slot[(i, j)] = t
        w = ({0, 1, 2} - {i, j}).pop()
        csyms = []
        for r in range(2):
            # The round-r digitization pairs what j heard of i's slot
            # with what i heard of j's slot; each recipient knows the
            # other addend from its own observation.
            t_i, t_j = 3 * r + i + 1, 3 * r + j + 1
            csyms.append(
                SymbolDecl(
                    id=f"c{i}{j}r{r}",
                    order=2,
                    dest=frozenset({i, j}),
                    power_exp=ONE,
                    payload=ONE_MINUS_ALPHA,
                    beam=canonical(r),
                    source=digitized_interference((f"ovh{t_i}u{j}", f"ovh{t_j}u{i}")),
                )
            )
        privates = [_zf_private(x, K, t) for x in range(K)]
        c_ids = tuple(s.id for s in csyms)
        term = SideInfoTerm(
            term=f"ovh{t}u{w}",
            slot_index=t,
            observer=w,
            needed_by=frozenset({i, j}),
            payload=ONE_MINUS_ALPHA,
            symbols=c_ids,
        )
        side_info.append(term)
        plan = {}
        for x in range(K):
            if x == w:
                first = DecodeStep(symbols=c_ids, joint=True, also_cancels=(f"g{t}",))
            else:
                first = DecodeStep(symbols=c_ids, side_info=(term.term,))
            plan[x] = (first, DecodeStep(symbols=(f"p{x}t{t}",)))
        slots.append(SlotDecl(slot_index=t, symbols=tuple(csyms + privates), decode_plan=plan))

    # Phase 3: slots 10-11 send full-rank combinations of g7, g8, g9.
    gsyms = [
        SymbolDecl(
            id=f"g{t}",
            order=3,
            dest=frozenset({0, 1, 2}),
            power_exp=ONE,
            payload=ONE_MINUS_ALPHA,
            beam=combiner("x1p3", antenna=0, position=t - 7),
            source=digitized_interference((f"ovh{t}u{({0, 1, 2} - set(pairs[t - 7])).pop()}",)),
        )
        for t in (7, 8, 9)
    ]
    known = {0: "g9", 1: "g8", 2: "g7"}  # digitized from that user's own observation
    for t in (10, 11):
        privates = [_zf_private(w, K, t) for w in range(K)]
        plan = {}
        for w in range(K):
            unknown = tuple(g.id for g in gsyms if g.id != known[w])
            plan[w] = (
                DecodeStep(symbols=unknown, group="ord3"),
                DecodeStep(symbols=(f"p{w}t{t}",)),
            )
        slots.append(
            SlotDecl(slot_index=t, symbols=tuple(gsyms + privates), decode_plan=plan)
        )

    return SchemeSpec(
        name="x1", K=3, N=3, slots=tuple(slots), side_info=tuple(side_info)
    )


# ---------------------------------------------------------------------------
# x2 / x4: one-slot asymmetric vertices
# ---------------------------------------------------------------------------


def build_x4(K: int, target: int) -> SchemeSpec:
    """One slot: a full-power stream for `target` on the first antenna
    plus one zero-forced private per user."""
    if not 2 <= K <= MAX_USERS:
        raise UnsupportedK(f"K = {K} outside [2, {MAX_USERS}]")
    if not 0 <= target < K:
        raise ValueError(f"target {target} out of range")
    main = SymbolDecl(
        id="s_main",
        order=1,
        dest=frozenset({target}),
        power_exp=ONE,
        payload=ONE_MINUS_ALPHA,
        beam=canonical(0),
        source=fresh_message(target),
    )
    privates = [_zf_private(u, K, 1) for u in range(K)]
    plan = {}
    for u in range(K):
        plan[u] = (
            DecodeStep(symbols=("s_main",), joint=(u != target)),
            DecodeStep(symbols=(f"p{u}t1",)),
        )
    slot = SlotDecl(slot_index=1, symbols=tuple([main] + privates), decode_plan=plan)
    return SchemeSpec(name=f"x4[{K},{target}]", K=K, N=K, slots=(slot,))


def build_x2(target: int) -> SchemeSpec:
    """The 3-user one-slot scheme serving `target` a full DoF."""
    if not 0 <= target < 3:
        raise ValueError("target must be 0, 1 or 2")
    scheme = build_x4(3, target)
    return SchemeSpec(
        name=f"x2[{target}]",
        K=3,
        N=3,
        slots=scheme.slots,
        side_info=scheme.side_info,
    )


# ---------------------------------------------------------------------------
# x3 / mat: K-user multiphase retransmission schedule
# ---------------------------------------------------------------------------


def _mat_schedule(K: int, common_payload: AffineAlpha, with_zf: bool, name: str) -> SchemeSpec:
    """Harmonic-duration multiphase retransmission schedule.

    Phase j runs lcm(1..K)/j slots, shared evenly across the j-subsets
    of users.  Phase 1 sends a K-symbol full-power vector to one user
    per slot (round robin).  Phase 2 pairs up the overheard first-phase
    terms, two opposite-direction terms per digitized symbol (each
    recipient knows the complementary addend from its own observation),
    one symbol per antenna.  Phases j >= 3 carry one digitized symbol
    per overheard term, all of a subset's symbols superposed on the
    first antenna through fixed full-rank combinations over the subset's
    slots; every subset member skips the symbols built from its own
    observations and decodes the rest as one multi-slot group.  The
    harmonic durations make demand meet capacity exactly at every phase.
    Every slot optionally superposes K zero-forced privates.
    """
    L = lcm(*range(1, K + 1))
    slots = []
    side_info = []
    pending: dict[frozenset, list] = {}
    t = 0

    def zf_block(slot: int) -> list[SymbolDecl]:
        return [_zf_private(u, K, slot) for u in range(K)] if with_zf else []

    def private_step(u: int, slot: int):
        return (DecodeStep(symbols=(f"p{u}t{slot}",)),) if with_zf else ()

    def overheard(slot_idx: int, observer: int, needed_by: frozenset, syms: tuple):
        term = SideInfoTerm(
            term=f"ovh{slot_idx}u{observer}",
            slot_index=slot_idx,
            observer=observer,
            needed_by=needed_by,
            payload=common_payload,
            symbols=syms,
        )
        side_info.append(term)
        return term

    # Phase 1.
    for idx in range(L):
        t += 1
        u = idx % K
        vec = [
            SymbolDecl(
                id=f"m1t{t}k{k}",
                order=1,
                dest=frozenset({u}),
                power_exp=ONE,
                payload=common_payload,
                beam=canonical(k),
                source=fresh_message(u),
            )
            for k in range(K)
        ]
        vec_ids = tuple(s.id for s in vec)
        refs = []
        for v in range(K):
            if v == u:
                continue
            term = overheard(t, v, frozenset({u}), vec_ids)
            refs.append(term.term)
            pending.setdefault(frozenset({u, v}), []).append(term)
        plan = {
            w: (
                DecodeStep(
                    symbols=vec_ids,
                    joint=(w != u),
                    side_info=tuple(refs) if w == u else (),
                ),
            )
            + private_step(w, t)
            for w in range(K)
        }
        slots.append(
            SlotDecl(slot_index=t, symbols=tuple(vec + zf_block(t)), decode_plan=plan)
        )

    # Phases 2..K.  Slot indices cycle through the subsets.
    for j in range(2, K + 1):
        T_j = L // j
        subsets = [frozenset(c) for c in combinations(range(K), j)]
        assert T_j % len(subsets) == 0, "harmonic schedule must tile the subsets"
        n_j = T_j // len(subsets)
        subset_slots: dict[frozenset, list] = {S: [] for S in subsets}
        for _ in range(n_j):
            for S in subsets:
                t += 1
                subset_slots[S].append(t)

        for S in subsets:
            backlog = pending.pop(S, [])
            slot_list = subset_slots[S]
            externals = [v for v in range(K) if v not in S]

            if j == 2:
                i, jj = sorted(S)
                fwd = [x for x in backlog if x.observer == jj]  # i's content
                bwd = [x for x in backlog if x.observer == i]  # jj's content
                assert len(fwd) == len(bwd) == len(slot_list) * (K - 1)
                made = []
                for a, b in zip(fwd, bwd):
                    made.append(
                        SymbolDecl(
                            id=f"b_{a.term}_{b.term}",
                            order=2,
                            dest=S,
                            power_exp=ONE,
                            payload=common_payload,
                            beam=canonical(0),
                            source=digitized_interference((a.term, b.term)),
                        )
                    )
                per_slot = K - 1  # one pair symbol per antenna
                for si, slot_idx in enumerate(slot_list):
                    syms = [
                        replace(made[si * per_slot + k], beam=canonical(k))
                        for k in range(per_slot)
                    ]
                    sym_ids = tuple(s.id for s in syms)
                    refs = []
                    for v in externals:
                        term = overheard(slot_idx, v, S, sym_ids)
                        refs.append(term.term)
                        pending.setdefault(S | {v}, []).append(term)
                    plan = {}
                    for w in range(K):
                        if w in S:
                            first = DecodeStep(symbols=sym_ids, side_info=tuple(refs))
                        else:
                            # w's observation is digitized next phase; it
                            # can strike that symbol off later.
                            first = DecodeStep(
                                symbols=sym_ids,
                                joint=True,
                                also_cancels=(f"b_ovh{slot_idx}u{w}",) if j < K else (),
                            )
                        plan[w] = (first,) + private_step(w, slot_idx)
                    slots.append(
                        SlotDecl(
                            slot_index=slot_idx,
                            symbols=tuple(syms + zf_block(slot_idx)),
                            decode_plan=plan,
                        )
                    )
            else:
                # One digitized symbol per term, all superposed on
                # antenna 0 in every slot of this subset.
                tag = f"grp{j}_" + "".join(str(x) for x in sorted(S))
                syms = [
                    SymbolDecl(
                        id=f"b_{term.term}",
                        order=j,
                        dest=S,
                        power_exp=ONE,
                        payload=common_payload,
                        beam=combiner(tag, antenna=0, position=pos),
                        source=digitized_interference((term.term,)),
                    )
                    for pos, term in enumerate(backlog)
                ]
                sym_ids = tuple(s.id for s in syms)
                known = {
                    w: frozenset(
                        f"b_{term.term}" for term in backlog if term.observer == w
                    )
                    for w in S
                }
                slot_refs = {}
                for slot_idx in slot_list:
                    refs = []
                    for v in externals:
                        term = overheard(slot_idx, v, S, sym_ids)
                        refs.append(term.term)
                        pending.setdefault(S | {v}, []).append(term)
                    slot_refs[slot_idx] = tuple(refs)
                for slot_idx in slot_list:
                    plan = {}
                    for w in range(K):
                        if w in S:
                            members = tuple(s for s in sym_ids if s not in known[w])
                            first = DecodeStep(
                                symbols=members,
                                group=tag,
                                side_info=slot_refs[slot_idx],
                            )
                        else:
                            first = DecodeStep(
                                symbols=sym_ids,
                                joint=True,
                                also_cancels=(f"b_ovh{slot_idx}u{w}",) if j < K else (),
                            )
                        plan[w] = (first,) + private_step(w, slot_idx)
                    slots.append(
                        SlotDecl(
                            slot_index=slot_idx,
                            symbols=tuple(syms + zf_block(slot_idx)),
                            decode_plan=plan,
                        )
                    )

    assert not pending, "all overheard terms must be re-delivered"
    slots.sort(key=lambda s: s.slot_index)
    return SchemeSpec(name=name, K=K, N=K, slots=tuple(slots), side_info=tuple(side_info))


@lru_cache(maxsize=None)
def build_x3(K: int) -> SchemeSpec:
    """K-user schedule: reduced-rate retransmission part plus K
    zero-forced privates in every slot."""
    if not 2 <= K <= MAX_USERS:
        raise UnsupportedK(f"K = {K} outside [2, {MAX_USERS}]")
    return _mat_schedule(K, ONE_MINUS_ALPHA, with_zf=True, name=f"x3[{K}]")


@lru_cache(maxsize=None)
def build_mat(K: int) -> SchemeSpec:
    """Pure delayed-CSIT baseline: full-rate symbols, no zero-forcing part."""
    if not 2 <= K <= MAX_USERS:
        raise UnsupportedK(f"K = {K} outside [2, {MAX_USERS}]")
    return _mat_schedule(K, ONE, with_zf=False, name=f"mat[{K}]")


# ---------------------------------------------------------------------------
# zf / tdma baselines
# ---------------------------------------------------------------------------


def build_zf(K: int, perfect_csit: bool = False) -> SchemeSpec:
    """One-slot zero-forcing to K users on K antennas.

    With quality-``a`` estimates the nulls leak, which caps each payload
    at ``a``; with the perfect flag every user sustains a full DoF.
    """
    if not 1 <= K <= MAX_USERS:
        raise UnsupportedK(f"K = {K} outside [1, {MAX_USERS}]")
    full_rate = perfect_csit or K == 1
    payload = ONE if full_rate else ALPHA
    syms = [
        SymbolDecl(
            id=f"z{u}",
            order=1,
            dest=frozenset({u}),
            power_exp=ONE,
            payload=payload,
            beam=null_of(frozenset(range(K)) - {u}),
            source=fresh_message(u),
        )
        for u in range(K)
    ]
    plan = {u: (DecodeStep(symbols=(f"z{u}",)),) for u in range(K)}
    slot = SlotDecl(slot_index=1, symbols=tuple(syms), decode_plan=plan)
    name = f"zf[{K}]" + ("+perfect" if perfect_csit else "")
    return SchemeSpec(name=name, K=K, N=K, slots=(slot,), csit_perfect=perfect_csit)


def build_tdma(K: int) -> SchemeSpec:
    """Round-robin single-user transmission; one total DoF, no CSIT."""
    if not 1 <= K <= MAX_USERS:
        raise UnsupportedK(f"K = {K} outside [1, {MAX_USERS}]")
    slots = []
    for u in range(K):
        sym = SymbolDecl(
            id=f"d{u}",
            order=1,
            dest=frozenset({u}),
            power_exp=ONE,
            payload=ONE,
            beam=canonical(0),
            source=fresh_message(u),
        )
        slots.append(
            SlotDecl(
                slot_index=u + 1,
                symbols=(sym,),
                decode_plan={u: (DecodeStep(symbols=(f"d{u}",)),)},
            )
        )
    return SchemeSpec(name=f"tdma[{K}]", K=K, N=K, slots=tuple(slots))


# ---------------------------------------------------------------------------
# x5: 3 users on 2 antennas, 8 slots
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def build_x5() -> SchemeSpec:
    """Three-phase scheme for 3 users on 2 antennas over 8 slots.

    Phase 1 (slots 1-3) serves one user pair per slot; each served
    vector splits into a reduced-power symbol on the span of the
    partner's estimate and a full-power symbol in its null.  The mutual
    interference is digitized and exchanged in phase 2 (slots 4-6,
    two digitizations per slot plus two zero-forced privates).  Phase 3
    (slots 7-8) sends full-rank combinations of the three digitized
    third-party observations; each user knows the one built from its own
    observation.  One pass favors the users unevenly; the scheme is
    declared round-robin and run over its three user rotations.
    """
    K, N = 3, 2
    slots = []
    side_info = []

    # Phase 1: (pair, vector-name) per slot.
    phase1 = [
        (1, (0, "v0a"), (1, "v1a")),
        (2, (0, "v0b"), (2, "v2a")),
        (3, (1, "v1b"), (2, "v2b")),
    ]
    for t, (i, vi), (j, vj) in phase1:
        syms = []
        for (owner, vname), partner in (((i, vi), j), ((j, vj), i)):
            syms += [
                SymbolDecl(
                    id=f"{vname}s1",
                    order=1,
                    dest=frozenset({owner}),
                    power_exp=ONE_MINUS_ALPHA,
                    payload=ONE_MINUS_ALPHA,
                    beam=span_of(partner),
                    source=fresh_message(owner),
                ),
                SymbolDecl(
                    id=f"{vname}s2",
                    order=1,
                    dest=frozenset({owner}),
                    power_exp=ONE,
                    payload=ONE,
                    beam=null_of({partner}),
                    source=fresh_message(owner),
                ),
            ]
        # eta{t}u{x}: what x overheard = the partner vector's image at x.
        for obs, src in ((i, vj), (j, vi)):
            side_info.append(
                SideInfoTerm(
                    term=f"eta{t}u{obs}",
                    slot_index=t,
                    observer=obs,
                    needed_by=frozenset({i, j}),
                    payload=ONE_MINUS_ALPHA,
                    symbols=(f"{src}s1", f"{src}s2"),
                )
            )
        plan = {}
        for owner, vname, partner in ((i, vi, j), (j, vj, i)):
            plan[owner] = (
                DecodeStep(
                    symbols=(f"{vname}s1", f"{vname}s2"),
                    side_info=(f"eta{t}u{owner}", f"eta{t}u{partner}"),
                ),
            )
        # The third user only stores; nothing here is decodable for it.
        slots.append(SlotDecl(slot_index=t, symbols=tuple(syms), decode_plan=plan))

    # Phase 2: slot 3+s re-delivers slot s's two digitized observations.
    bracket_of = {}  # third user -> phase-3 bracket id
    for t, (i, vi), (j, vj) in phase1:
        slot_idx = t + 3
        w = ({0, 1, 2} - {i, j}).pop()
        csyms = [
            SymbolDecl(
                id=f"c{t}o{obs}",
                order=2,
                dest=frozenset({i, j}),
                power_exp=ONE,
                payload=ONE_MINUS_ALPHA,
                beam=canonical(ant),
                source=digitized_interference((f"eta{t}u{obs}",)),
            )
            for ant, obs in enumerate((i, j))
        ]
        privates = [
            SymbolDecl(
                id=f"q{u}t{slot_idx}",
                order=1,
                dest=frozenset({u}),
                power_exp=ALPHA,
                payload=ALPHA,
                beam=null_of({other}),
                source=fresh_message(u),
            )
            for u, other in ((i, j), (j, i))
        ]
        c_ids = tuple(s.id for s in csyms)
        term = SideInfoTerm(
            term=f"ovh{slot_idx}u{w}",
            slot_index=slot_idx,
            observer=w,
            needed_by=frozenset({i, j}),
            payload=ONE_MINUS_ALPHA,
            symbols=c_ids,
        )
        side_info.append(term)
        bracket_of[w] = f"b{w}"
        plan = {
            w: (DecodeStep(symbols=c_ids, joint=True, also_cancels=(f"b{w}",)),)
        }
        for u in (i, j):
            plan[u] = (
                DecodeStep(symbols=c_ids, side_info=(term.term,)),
                DecodeStep(symbols=(f"q{u}t{slot_idx}",)),
            )
        slots.append(
            SlotDecl(
                slot_index=slot_idx,
                symbols=tuple(csyms + privates),
                decode_plan=plan,
            )
        )

    # Phase 3: slots 7-8 combine the three digitized observations.
    phase2_slot_of = {2: 4, 1: 5, 0: 6}  # third user -> slot it overheard
    brackets = [
        SymbolDecl(
            id=f"b{w}",
            order=3,
            dest=frozenset({0, 1, 2}),
            power_exp=ONE,
            payload=ONE_MINUS_ALPHA,
            beam=combiner("x5p3", antenna=0, position=w),
            source=digitized_interference((f"ovh{phase2_slot_of[w]}u{w}",)),
        )
        for w in range(3)
    ]
    private_pairs = {7: (0, 1), 8: (2, 0)}
    for t in (7, 8):
        a, b = private_pairs[t]
        privates = [
            SymbolDecl(
                id=f"r{u}t{t}",
                order=1,
                dest=frozenset({u}),
                power_exp=ALPHA,
                payload=ALPHA,
                beam=null_of({other}),
                source=fresh_message(u),
            )
            for u, other in ((a, b), (b, a))
        ]
        plan = {}
        for u in range(3):
            unknown = tuple(s.id for s in brackets if s.id != f"b{u}")
            steps = [DecodeStep(symbols=unknown, group="ord3")]
            if u in (a, b):
                steps.append(DecodeStep(symbols=(f"r{u}t{t}",)))
            plan[u] = tuple(steps)
        slots.append(
            SlotDecl(
                slot_index=t,
                symbols=tuple(brackets + privates),
                decode_plan=plan,
            )
        )

    return SchemeSpec(
        name="x5",
        K=3,
        N=2,
        slots=tuple(slots),
        side_info=tuple(side_info),
        round_robin_users=3,
    )


# ---------------------------------------------------------------------------
# Name resolution (CLI, config files, tests)
# ---------------------------------------------------------------------------


def resolve(spec: str) -> SchemeSpec:
    """Build a scheme from a compact name like ``x3:4`` or ``zf:3:perfect``.

    Grammar: ``name[:arg[:arg]]`` with x1, x2:<target>, x3:<K>,
    x4:<K>:<target>, x5, mat:<K>, zf:<K>[:perfect], tdma:<K>.
    """
    parts = spec.strip().lower().split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "x1" and not args:
            return build_x1()
        if name == "x2" and len(args) == 1:
            return build_x2(int(args[0]))
        if name == "x3" and len(args) == 1:
            return build_x3(int(args[0]))
        if name == "x4" and len(args) == 2:
            return build_x4(int(args[0]), int(args[1]))
        if name == "x5" and not args:
            return build_x5()
        if name == "mat" and len(args) == 1:
            return build_mat(int(args[0]))
        if name == "zf" and 1 <= len(args) <= 2:
            perfect = len(args) == 2 and args[1] == "perfect"
            if len(args) == 2 and not perfect:
                raise ValueError(f"unknown zf flag {args[1]!r}")
            return build_zf(int(args[0]), perfect)
        if name == "tdma" and len(args) == 1:
            return build_tdma(int(args[0]))
    except ValueError as exc:
        raise ValueError(f"bad scheme spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown scheme spec {spec!r}")


def builtin_catalog() -> list[SchemeSpec]:
    """Every built-in scheme at representative parameters."""
    out = [build_x1(), build_x5()]
    out += [build_x2(i) for i in range(3)]
    out += [build_x3(K) for K in range(2, MAX_USERS + 1)]
    out += [build_x4(3, 1), build_x4(5, 4)]
    out += [build_mat(K) for K in (2, 3, 5)]
    out += [build_zf(3), build_zf(3, perfect_csit=True), build_zf(1)]
    out += [build_tdma(1), build_tdma(3), build_tdma(5)]
    return out
