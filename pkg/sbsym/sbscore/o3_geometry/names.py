"""Schönflies tokens and the parsing of concrete group names."""

from __future__ import annotations

import re
from enum import Enum
from typing import Optional

from sbsym.sbscore.exceptions import BadParameter, UnknownName


class Family(str, Enum):
    C1 = "C1"
    Ci = "Ci"
    Cs = "Cs"
    Cn = "Cn"
    Cnv = "Cnv"
    Cnh = "Cnh"
    S2n = "S2n"
    Dn = "Dn"
    Dnd = "Dnd"
    Dnh = "Dnh"
    T = "T"
    Td = "Td"
    Th = "Th"
    O = "O"  # noqa: E741
    Oh = "Oh"
    I = "I"  # noqa: E741
    Ih = "Ih"


class Symbolic(str, Enum):
    Cinf = "Cinf"
    Cinfv = "Cinfv"
    Cinfh = "Cinfh"
    Dinf = "Dinf"
    Dinfh = "Dinfh"
    SO2 = "SO2"
    O2 = "O2"
    SO3 = "SO3"
    O3 = "O3"
    K = "K"
    Kh = "Kh"


AXIAL = frozenset(
    {Family.Cn, Family.Cnv, Family.Cnh, Family.S2n, Family.Dn, Family.Dnd, Family.Dnh}
)

# n = 1 members of axial families under their usual names
_ALIASES_N1 = {
    Family.Cn: "C1",
    Family.Cnv: "Cs",
    Family.Cnh: "Cs",
    Family.S2n: "Ci",
    Family.Dn: "C2",
    Family.Dnd: "C2h",
    Family.Dnh: "C2v",
}

MAX_N = 32


def is_symbolic(name: str) -> bool:
    return name in Symbolic._value2member_map_


def family_order(family: Family, n: Optional[int] = None) -> int:
    fixed = {
        Family.C1: 1,
        Family.Ci: 2,
        Family.Cs: 2,
        Family.T: 12,
        Family.Td: 24,
        Family.Th: 24,
        Family.O: 24,
        Family.Oh: 48,
        Family.I: 60,
        Family.Ih: 120,
    }
    if family in fixed:
        return fixed[family]
    assert n is not None
    if family is Family.Cn:
        return n
    if family in (Family.Cnv, Family.Cnh, Family.S2n, Family.Dn):
        return 2 * n
    return 4 * n


def validate(name: str, n: Optional[int]) -> tuple[Family, Optional[int]]:
    """Check a (family token, n) pair; ``n`` is required iff the family is axial."""
    try:
        family = Family(name)
    except ValueError:
        raise UnknownName(f"unknown point-group token {name!r}") from None
    if family in AXIAL:
        if n is None:
            raise BadParameter(f"{family.value} needs n")
        if n < 2:
            alias = _ALIASES_N1[family] if n == 1 else None
            hint = f" (use {alias})" if alias else ""
            raise BadParameter(f"{family.value} needs n >= 2{hint}")
        if n > MAX_N:
            raise BadParameter(f"n={n} exceeds the realized limit {MAX_N}")
        return family, n
    if n is not None:
        raise BadParameter(f"{family.value} takes no n")
    return family, None


_CONCRETE = re.compile(r"^(C|D|S)(\d+)(v|h|d)?$")


def parse_group_name(text: str, n: Optional[int] = None) -> tuple[str, Optional[int]]:
    """Resolve ``"D3"``, ``"C4v"``, ``"S4"``, ``"Dnh"`` + n, ``"Dinfh"`` ...

    Returns a (token, n) pair; symbolic names come back with ``n=None``.
    """
    s = text.strip()
    if is_symbolic(s):
        if n is not None:
            raise BadParameter(f"{s} takes no n")
        return s, None
    if s in Family._value2member_map_:
        family, n = validate(s, n)
        return family.value, n
    m = _CONCRETE.match(s)
    if not m:
        raise UnknownName(f"unknown point-group name {text!r}")
    letter, digits, suffix = m.group(1), int(m.group(2)), m.group(3) or ""
    if n is not None and n != digits:
        raise BadParameter(f"{s} conflicts with n={n}")
    if letter == "S":
        if suffix:
            raise UnknownName(f"unknown point-group name {text!r}")
        if digits % 2:
            raise BadParameter(f"S{digits} is C{digits}h; use Cnh")
        family, k = validate("S2n", digits // 2)
        return family.value, k
    if letter == "C" and digits == 1 and not suffix:
        return Family.C1.value, None
    token = {"C": "Cn", "D": "Dn"}[letter] + suffix
    if token == "Cnd":
        raise UnknownName(f"unknown point-group name {text!r}")
    family, k = validate(token, digits)
    return family.value, k


def display_name(name: str, n: Optional[int]) -> str:
    """Concrete label: ("Dnh", 4) → "D4h", ("S2n", 2) → "S4"."""
    if n is None:
        return name
    if name == "S2n":
        return f"S{2 * n}"
    return name.replace("n", str(n), 1)
