"""Axiom tables as text formulas in the mini-language of :mod:`formulas`.

``*`` is meet, ``+`` is join, ``Ch`` the dual contact, ``<<`` the
non-tangential part-of relation, ``O``/``Oh`` overlap and underlap.
"""

from __future__ import annotations

CORE: dict[str, str] = {
    "C1": "a C b -> ~(a = 0) & ~(b = 0)",
    "C2": "a C b & a <= a2 & b <= b2 -> a2 C b2",
    "C3": "a C (b + c) -> a C b | a C c",
    "C4": "a C b -> b C a",
    "C5": "~(a * b = 0) -> a C b",
    "Chat1": "a Ch b -> ~(a = 1) & ~(b = 1)",
    "Chat2": "a Ch b & a2 <= a & b2 <= b -> a2 Ch b2",
    "Chat3": "a Ch (b * c) -> a Ch b | a Ch c",
    "Chat4": "a Ch b -> b Ch a",
    "Chat5": "~(a + b = 1) -> a Ch b",
    "Ll1": "0 << 0",
    "Ll2": "1 << 1",
    "Ll3": "a << b -> a <= b",
    "Ll4": "a2 <= a & a << b & b <= b2 -> a2 << b2",
    "Ll5": "a << c & b << c -> (a + b) << c",
    "Ll6": "c << a & c << b -> c << (a * b)",
    "Ll7": "a << b & (b * c) << d & c << (a + d) -> c << d",
    "MC1": "a C b & a << c -> a C (b * c)",
    "MC2": "~(a C (b * c)) & a C b & ~((a * d) C b) -> d Ch c",
    "MChat1": "a Ch b & c << a -> a Ch (b + c)",
    "MChat2": "~(a Ch (b + c)) & a Ch b & ~((a + d) Ch b) -> d C c",
    "MLl1": "~(a Ch b) & (a * c) << b -> c << b",
    "MLl2": "~(a C b) & b << (a + c) -> b << c",
}

# Each core axiom paired with the one expressing its order dual.
CORE_DUALS: dict[str, str] = {
    "C1": "Chat1", "C2": "Chat2", "C3": "Chat3", "C4": "Chat4", "C5": "Chat5",
    "Ll1": "Ll2", "Ll3": "Ll3", "Ll4": "Ll4", "Ll5": "Ll6", "Ll7": "Ll7",
    "MC1": "MChat1", "MC2": "MChat2", "MLl1": "MLl2",
}
CORE_DUALS.update({v: k for k, v in list(CORE_DUALS.items())})

MEREOTOPOLOGICAL: dict[str, str] = {
    "leq0": "a <= b & b <= a -> a = b",
    "leq1": "a <= a",
    "leq2": "a <= b & b <= c -> a <= c",
    "O1": "a O b -> b O a",
    "Oh1": "a Oh b -> b Oh a",
    "O2": "a O b -> a O a",
    "Oh2": "a Oh b -> a Oh a",
    "nO_leq": "~(a O a) -> a <= b",
    "nOh_leq": "~(b Oh b) -> a <= b",
    "O_leq": "a O b & b <= c -> a O c",
    "Oh_leq": "c <= a & a Oh b -> c Oh b",
    "O_Oh": "a O a | a Oh a",
    "leq_O_Oh": "~(c O a) & ~(c Oh b) -> a <= b",
    "C": "a C b -> b C a",
    "Chat": "a Ch b -> b Ch a",
    "CO1": "a O b -> a C b",
    "ChOh1": "a Oh b -> a Ch b",
    "CO2": "a C b -> a O a",
    "ChOh2": "a Ch b -> a Oh a",
    "C_leq": "a C b & b <= c -> a C c",
    "Ch_leq": "a Ch b & c <= b -> a Ch c",
    "Ll_leq1": "a << b -> a <= b",
    "Ll_leq2": "a <= b & b << c -> a << c",
    "Ll_leq3": "a << b & b <= c -> a << c",
    "Ll_O": "~(a O a) -> a << b",
    "Ll_Oh": "~(b Oh b) -> a << b",
    "Ll_CO": "a C b & b << c -> a O c",
    "Ll_ChOh": "c << a & a Ch b -> c Oh b",
    "Ll_COh": "~(c C a) & ~(c Oh b) -> a << b",
    "Ll_ChO": "~(c O a) & ~(c Ch b) -> a << b",
}

EXTRA: dict[str, str] = {
    "ExtO": "~(a <= b) -> exists c: ~(a * c = 0) & b * c = 0",
    "ExtOhat": "~(a <= b) -> exists c: a + c = 1 & ~(b + c = 1)",
    "ExtC": "~(a = 1) -> exists b: ~(b = 0) & ~(a C b)",
    "ExtChat": "~(a = 0) -> exists b: ~(b = 1) & ~(a Ch b)",
    "EXTC": "~(a <= b) -> exists c: a C c & ~(b C c)",
    "EXTChat": "~(a <= b) -> exists c: b Ch c & ~(a Ch c)",
    "ConC": "~(a = 0) & ~(b = 0) & a + b = 1 -> a C b",
    "ConChat": "~(a = 1) & ~(b = 1) & a * b = 0 -> a Ch b",
    "Nor1": "~(a C b) -> exists c, d: c + d = 1 & ~(a C c) & ~(b C d)",
    "Nor2": "~(a Ch b) -> exists c, d: c * d = 0 & ~(a Ch c) & ~(b Ch d)",
    "Nor3": "a << b -> exists c: a << c & c << b",
    "URichLl": "a << b -> exists c: b + c = 1 & ~(a C c)",
    "URichChat": "~(a Ch b) -> exists c, d: a + c = 1 & b + d = 1 & ~(c C d)",
    "ORichLl": "a << b -> exists c: a * c = 0 & ~(c Ch b)",
    "ORichC": "~(a C b) -> exists c, d: a * c = 0 & b * d = 0 & ~(c Ch d)",
}

U_RICH = ("ExtOhat", "URichLl", "URichChat")
O_RICH = ("ExtO", "ORichLl", "ORichC")

RCC8_ORDER = ("EQ", "NTPP", "NTPPi", "TPP", "TPPi", "PO", "EC", "DC")

RCC8: dict[str, str] = {
    "DC": "~(a C b)",
    "EC": "a C b & ~(a O b)",
    "PO": "a O b & ~(a <= b) & ~(b <= a)",
    "TPP": "a <= b & ~(a << b) & ~(b <= a)",
    "TPPi": "b <= a & ~(b << a) & ~(a <= b)",
    "NTPP": "a << b & ~(a = b)",
    "NTPPi": "b << a & ~(a = b)",
    "EQ": "a = b",
}
