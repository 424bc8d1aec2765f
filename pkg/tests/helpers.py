"""Shared test utilities: scheme mutation and tight-step enumeration."""

from dataclasses import replace
from fractions import Fraction

from doflab import SchemeSpec
from doflab.alphapoly import AffineAlpha


def inflate_payload(scheme: SchemeSpec, symbol_id: str, eps) -> SchemeSpec:
    """Copy of the scheme with one symbol's payload raised by eps > 0."""
    bump = AffineAlpha.const(Fraction(eps))
    slots = tuple(
        replace(
            slot,
            symbols=tuple(
                replace(s, payload=s.payload + bump) if s.id == symbol_id else s
                for s in slot.symbols
            ),
        )
        for slot in scheme.slots
    )
    return replace(scheme, slots=slots)


def decoded_symbol_ids(scheme: SchemeSpec) -> list[str]:
    """Symbols that appear in some decode step.

    Every built-in decode step is tight, so inflating any of these
    payloads must flip validation to failing.
    """
    out = []
    seen = set()
    for slot in scheme.slots:
        for steps in slot.decode_plan.values():
            for st in steps:
                for sid in st.symbols:
                    if sid not in seen:
                        seen.add(sid)
                        out.append(sid)
    return out


def drop_slots(scheme: SchemeSpec, keep: int) -> SchemeSpec:
    """Truncate a scheme to its first `keep` slots."""
    return replace(scheme, slots=scheme.slots[:keep])
