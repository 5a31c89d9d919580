"""Parser for the series mini-language.

    expr    := family "(" [ arg ("," arg)* ] ")"
    arg     := name "=" complex
    complex := real | real ("+" | "-") real "i"

Whitespace between tokens is ignored. Error offsets are 1-based character
positions.
"""

import re

from . import catalog as C
from .errors import ParseError

_FAMILIES = {f.value: f for f in C.PARAMETERS}
_NAMES = ("z", "a", "b", "beta", "c")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_UREAL = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class _Scanner:
    def __init__(self, src):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos] in " \t\r\n":
            self.pos += 1

    def error(self, message, expected, pos=None):
        pos = self.pos if pos is None else pos
        exp = " or ".join(expected)
        raise ParseError(f"{message} at offset {pos + 1}, expected {exp}", offset=pos + 1,
                         expected=tuple(expected))

    def peek(self):
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"unexpected {found}", [repr(ch)])
        self.pos += 1

    def match(self, pattern, what):
        self.skip_ws()
        m = pattern.match(self.src, self.pos)
        if not m:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"unexpected {found}", [what])
        self.pos = m.end()
        return m.group(0), m.start()


def _parse_complex(sc):
    text, _ = sc.match(_REAL, "a number")
    re_part = float(text)
    if sc.peek() in ("+", "-"):
        sign = 1.0 if sc.peek() == "+" else -1.0
        sc.pos += 1
        im_text, _ = sc.match(_UREAL, "a number")
        sc.expect("i")
        return complex(re_part, sign * float(im_text))
    return complex(re_part, 0.0)


def parse_series_expr(src):
    """Parse ``src`` into a validated SummandSpec.

    Raises ParseError for malformed text, unknown families or parameter
    names, duplicates and missing parameters; ValidationError when the values
    fall outside the family's validity range.
    """
    if not isinstance(src, str):
        raise ParseError("series expression must be text", offset=1, expected=("a family name",))
    sc = _Scanner(src)
    if not src.strip():
        sc.error("empty series expression", ["a family name"], 0)
    name, start = sc.match(_IDENT, "a family name")
    family = _FAMILIES.get(name)
    if family is None:
        sc.error(f"unknown family {name!r}", sorted(_FAMILIES), start)
    sc.expect("(")
    params = {}
    if sc.peek() != ")":
        while True:
            pname, pstart = sc.match(_IDENT, "a parameter name")
            if pname not in _NAMES or pname not in C.PARAMETERS[family]:
                allowed = C.PARAMETERS[family] or ("')' (no parameters)",)
                sc.error(f"unknown parameter {pname!r} for {name}", list(allowed), pstart)
            if pname in params:
                sc.error(f"duplicate parameter {pname!r}", [f"a parameter other than {pname!r}"], pstart)
            sc.expect("=")
            params[pname] = _parse_complex(sc)
            if sc.peek() == ",":
                sc.pos += 1
                continue
            break
    sc.expect(")")
    if sc.peek():
        sc.error(f"trailing text {sc.peek()!r}", ["end of input"])
    missing = [p for p in C.PARAMETERS[family] if p not in params]
    if missing:
        sc.error(f"missing parameter(s) {', '.join(missing)} for {name}", missing, len(src) - 1)
    return C.make_summand(family, params)


def parse_complex(text):
    """Complex literal in the expression grammar (used for --alpha etc.)."""
    sc = _Scanner(text)
    value = _parse_complex(sc)
    if sc.peek():
        sc.error(f"trailing text {sc.peek()!r}", ["end of input"])
    return value
